#include "specdmd/exactdmd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <complex>

namespace specdmd {

DmdModel fit_exact(const SnapshotMatrix& X, int r) {
  if (!X.time.uniform_dt) {
    throw validation_error(
        "fit_exact requires a uniform TimeGrid; use optimized DMD for "
        "arbitrary sample times");
  }
  const Eigen::Index n = X.rows();
  const Eigen::Index m = X.cols();
  if (r < 1 || r > std::min(n, m - 1)) {
    throw validation_error("fit_exact requires 1 <= r <= min(n, m-1)");
  }
  const double dt = *X.time.uniform_dt;

  const Eigen::MatrixXd X1 = X.values.leftCols(m - 1);
  const Eigen::MatrixXd X2 = X.values.rightCols(m - 1);

  Eigen::BDCSVD<Eigen::MatrixXd> svd(X1,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s(r - 1) < 1e-12 * s(0)) {
    throw validation_error("fit_exact: data is rank deficient at rank " +
                           std::to_string(r));
  }
  const Eigen::MatrixXd Ur = svd.matrixU().leftCols(r);
  const Eigen::MatrixXd Vr = svd.matrixV().leftCols(r);
  const Eigen::VectorXd sr = s.head(r);

  const Eigen::MatrixXd Atil =
      Ur.transpose() * X2 * Vr * sr.cwiseInverse().asDiagonal();

  Eigen::EigenSolver<Eigen::MatrixXd> eig(Atil);
  if (eig.info() != Eigen::Success) {
    throw validation_error("fit_exact: eigendecomposition failed");
  }
  const Eigen::VectorXcd lambda = eig.eigenvalues();
  const Eigen::MatrixXcd W = eig.eigenvectors();

  DmdModel model;
  model.rank = r;
  model.train_span = {X.time.front(), X.time.back()};

  Eigen::MatrixXcd Phi =
      (X2 * Vr * sr.cwiseInverse().asDiagonal()).cast<std::complex<double>>() *
      W;

  model.eigs.resize(r);
  for (int j = 0; j < r; ++j) {
    model.eigs(j) = std::log(lambda(j)) / dt;  // principal branch
    if (std::abs(model.eigs(j).imag()) * dt > 3.14159265358979323846 - 1e-9) {
      model.warnings.push_back("eigenvalue " + std::to_string(j) +
                               " is at the Nyquist limit for dt");
    }
  }

  for (int j = 0; j < r; ++j) {
    const double nrm = Phi.col(j).norm();
    if (nrm > 0.0) {
      Phi.col(j) /= nrm;
    } else {
      Phi.col(j).setZero();
      Phi(0, j) = 1.0;
    }
  }
  model.modes = Phi;

  // Amplitudes: least squares of Phi diag(b) E against all m snapshots, via
  // the Gram system G = (Phi^H Phi) .* conj(E E^H), rhs_j = sum_k
  // conj(E_jk) (Phi^H X)_jk.
  Eigen::MatrixXcd E(r, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    for (int j = 0; j < r; ++j) {
      E(j, k) = std::exp(model.eigs(j) * X.time.times[k]);
    }
  }
  const Eigen::MatrixXcd G =
      (Phi.adjoint() * Phi).cwiseProduct((E.conjugate() * E.transpose()));
  const Eigen::MatrixXcd PhiX =
      Phi.adjoint() * X.values.cast<std::complex<double>>();
  const Eigen::VectorXcd rhs = E.conjugate().cwiseProduct(PhiX).rowwise().sum();
  model.amps = G.completeOrthogonalDecomposition().solve(rhs);

  return model;
}

}  // namespace specdmd
