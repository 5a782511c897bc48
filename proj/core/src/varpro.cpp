#include "specdmd/varpro.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <limits>

namespace specdmd {

namespace {

using Cplx = std::complex<double>;

// Truncated-SVD state of the basis T(alpha) shared by the inner solve and
// the Jacobian factors.
struct ProjectionState {
  Eigen::MatrixXcd T;   // m x r
  Eigen::MatrixXcd U;   // m x k
  Eigen::VectorXd s;    // k
  Eigen::MatrixXcd V;   // r x k
  Eigen::MatrixXcd B;   // r x n
  Eigen::MatrixXcd R;   // m x n, Y - T B
  double res_norm = 0.0;
};

Eigen::MatrixXcd data_transposed(const SnapshotMatrix& X) {
  return X.values.transpose().cast<Cplx>();
}

// Inner linear solve B = T^+ Y with relative singular-value cutoff 1e-12.
ProjectionState project_onto_basis(const Eigen::VectorXcd& alpha,
                                   const TimeGrid& t,
                                   const Eigen::MatrixXcd& Y) {
  ProjectionState st;
  st.T = eval_basis(alpha, t);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      st.T, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index k = 0;
  const double cutoff = sv.size() > 0 ? 1e-12 * sv(0) : 0.0;
  while (k < sv.size() && sv(k) > cutoff) ++k;
  st.U = svd.matrixU().leftCols(k);
  st.s = sv.head(k);
  st.V = svd.matrixV().leftCols(k);
  Eigen::MatrixXcd UY = st.U.adjoint() * Y;  // k x n
  for (Eigen::Index i = 0; i < k; ++i) {
    UY.row(i) /= st.s(i);
  }
  st.B = st.V * UY;
  st.R = Y - st.T * st.B;
  st.res_norm = st.R.norm();
  return st;
}

// Variable-projection Jacobian factors.  For eigenvalue j (d_j = t .* T_j):
//   S_j = p_j a_j^T + g_j h_j^T  with d residual/d Re(alpha_j) = -S_j,
//   D_j = p_j a_j^T - g_j h_j^T  with d residual/d Im(alpha_j) = -i D_j,
// where p_j = (I - U U^H) d_j, a_j = B row j, g_j = (T^+)^H e_j and
// h_j = (d_j^H R)^T.
struct JacobianFactors {
  Eigen::MatrixXcd P;  // m x r
  Eigen::MatrixXcd A;  // n x r
  Eigen::MatrixXcd G;  // m x r
  Eigen::MatrixXcd H;  // n x r
};

JacobianFactors jacobian_factors(const TimeGrid& t, const ProjectionState& st) {
  JacobianFactors f;
  Eigen::MatrixXcd D = st.T;
  for (Eigen::Index k = 0; k < D.rows(); ++k) {
    D.row(k) *= t.times[static_cast<std::size_t>(k)];
  }
  f.P = D - st.U * (st.U.adjoint() * D).eval();
  f.A = st.B.transpose();
  Eigen::MatrixXcd VH = st.V.adjoint();  // k x r
  for (Eigen::Index i = 0; i < VH.rows(); ++i) {
    VH.row(i) /= st.s(i);
  }
  f.G = st.U * VH;
  f.H = (D.adjoint() * st.R).transpose();
  return f;
}

// Normal equations assembled from the factors: every JtJ entry is a sum of
// Hadamard products of r x r Gram matrices, so the 2mn x 2r Jacobian is never
// materialized.
void normal_equations(const JacobianFactors& f, const Eigen::MatrixXcd& R,
                      Eigen::MatrixXd& JtJ, Eigen::VectorXd& Jtr) {
  const Eigen::Index r = f.P.cols();
  const Eigen::MatrixXcd PP = f.P.adjoint() * f.P;
  const Eigen::MatrixXcd AA = f.A.adjoint() * f.A;
  const Eigen::MatrixXcd PG = f.P.adjoint() * f.G;
  const Eigen::MatrixXcd AH = f.A.adjoint() * f.H;
  const Eigen::MatrixXcd GG = f.G.adjoint() * f.G;
  const Eigen::MatrixXcd HH = f.H.adjoint() * f.H;
  const Eigen::MatrixXcd GP = PG.adjoint();
  const Eigen::MatrixXcd HA = AH.adjoint();

  const Eigen::MatrixXcd PPAA = PP.cwiseProduct(AA);
  const Eigen::MatrixXcd PGAH = PG.cwiseProduct(AH);
  const Eigen::MatrixXcd GPHA = GP.cwiseProduct(HA);
  const Eigen::MatrixXcd GGHH = GG.cwiseProduct(HH);

  const Eigen::MatrixXcd SS = PPAA + PGAH + GPHA + GGHH;
  const Eigen::MatrixXcd DD = PPAA - PGAH - GPHA + GGHH;
  const Eigen::MatrixXcd SD = PPAA - PGAH + GPHA - GGHH;
  const Eigen::MatrixXcd DS = PPAA + PGAH - GPHA - GGHH;

  JtJ.resize(2 * r, 2 * r);
  for (Eigen::Index a = 0; a < r; ++a) {
    for (Eigen::Index b = 0; b < r; ++b) {
      JtJ(2 * a, 2 * b) = SS(a, b).real();
      JtJ(2 * a, 2 * b + 1) = -SD(a, b).imag();
      JtJ(2 * a + 1, 2 * b) = DS(a, b).imag();
      JtJ(2 * a + 1, 2 * b + 1) = DD(a, b).real();
    }
  }

  const Eigen::MatrixXcd PR = f.P.adjoint() * R;
  const Eigen::MatrixXcd GR = f.G.adjoint() * R;
  Jtr.resize(2 * r);
  for (Eigen::Index a = 0; a < r; ++a) {
    const Cplx pa = (PR.row(a) * f.A.col(a).conjugate()).value();
    const Cplx ga = (GR.row(a) * f.H.col(a).conjugate()).value();
    Jtr(2 * a) = -(pa + ga).real();
    Jtr(2 * a + 1) = -(pa - ga).imag();
  }
}

void check_inputs(const SnapshotMatrix& X, const TimeGrid& t,
                  const Eigen::VectorXcd& alpha) {
  if (static_cast<std::size_t>(X.cols()) != t.size()) {
    throw validation_error("solve_varpro: X columns must match TimeGrid");
  }
  if (alpha.size() < 1) {
    throw validation_error("solve_varpro: alpha must be non-empty");
  }
  if (alpha.size() > std::min(X.rows(), X.cols())) {
    throw validation_error("solve_varpro: requires r <= min(n, m)");
  }
  if (!alpha.allFinite()) {
    throw validation_error("solve_varpro: alpha0 must be finite");
  }
}

}  // namespace

void VarProOptions::validate() const {
  const bool ok = max_outer_iters > 0 && lm_lambda0 > 0.0 &&
                  lm_scale_up > 1.0 && lm_scale_down > 0.0 &&
                  lm_scale_down < 1.0 && residual_tol > 0.0 &&
                  step_tol > 0.0 && max_lm_retries > 0;
  if (!ok) {
    throw validation_error("VarProOptions: all options positive, "
                           "scale_up > 1 > scale_down required");
  }
}

Eigen::MatrixXcd eval_basis(const Eigen::VectorXcd& alpha, const TimeGrid& t) {
  if (alpha.size() < 1) {
    throw validation_error("eval_basis: alpha must be non-empty");
  }
  const auto m = static_cast<Eigen::Index>(t.size());
  const auto r = alpha.size();
  Eigen::MatrixXcd T(m, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const double re = alpha(j).real() * t.times[static_cast<std::size_t>(k)];
      if (re > 700.0) {
        throw validation_error("eval_basis: divergent basis, Re(alpha)*t > 700");
      }
      T(k, j) = std::exp(alpha(j) * t.times[static_cast<std::size_t>(k)]);
    }
  }
  return T;
}

Eigen::VectorXcd project_eigs(const Eigen::VectorXcd& alpha, EigConstraint c) {
  Eigen::VectorXcd out = alpha;
  switch (c) {
    case EigConstraint::Unconstrained:
      break;
    case EigConstraint::LeftHalfPlane:
      for (Eigen::Index j = 0; j < out.size(); ++j) {
        out(j) = Cplx(std::min(out(j).real(), 0.0), out(j).imag());
      }
      break;
    case EigConstraint::ImaginaryAxis:
      for (Eigen::Index j = 0; j < out.size(); ++j) {
        out(j) = Cplx(0.0, out(j).imag());
      }
      break;
  }
  return out;
}

VarProResult solve_varpro(const SnapshotMatrix& X, const TimeGrid& t,
                          const Eigen::VectorXcd& alpha0, EigConstraint c,
                          const VarProOptions& opts) {
  opts.validate();
  check_inputs(X, t, alpha0);

  const Eigen::MatrixXcd Y = data_transposed(X);
  const double y_norm = Y.norm();
  const auto r = alpha0.size();

  Eigen::VectorXcd alpha = project_eigs(alpha0, c);
  ProjectionState st = project_onto_basis(alpha, t, Y);

  double lambda = opts.lm_lambda0;
  bool converged = false;
  int iterations = 0;

  Eigen::MatrixXd JtJ;
  Eigen::VectorXd Jtr;

  for (int it = 0; it < opts.max_outer_iters; ++it) {
    iterations = it + 1;
    const JacobianFactors f = jacobian_factors(t, st);
    normal_equations(f, st.R, JtJ, Jtr);

    const double max_diag = std::max(JtJ.diagonal().maxCoeff(), 1e-300);
    const Eigen::VectorXd damp =
        JtJ.diagonal().cwiseMax(1e-14 * max_diag);

    bool accepted = false;
    for (int retry = 0; retry < opts.max_lm_retries; ++retry) {
      Eigen::MatrixXd M = JtJ;
      M.diagonal() += lambda * damp;
      const Eigen::VectorXd delta = M.ldlt().solve(-Jtr);
      if (!delta.allFinite()) {
        lambda *= opts.lm_scale_up;
        continue;
      }
      if (delta.norm() < opts.step_tol) {
        // Proposed step is negligible: the iterate is stationary (e.g. the
        // start was already optimal), so terminate as converged.
        converged = true;
        break;
      }

      Eigen::VectorXcd cand(r);
      for (Eigen::Index j = 0; j < r; ++j) {
        cand(j) = alpha(j) + Cplx(delta(2 * j), delta(2 * j + 1));
      }
      cand = project_eigs(cand, c);

      ProjectionState cand_st;
      try {
        cand_st = project_onto_basis(cand, t, Y);
      } catch (const validation_error&) {
        lambda *= opts.lm_scale_up;  // overflowing trial step: reject
        continue;
      }
      if (!std::isfinite(cand_st.res_norm)) {
        lambda *= opts.lm_scale_up;
        continue;
      }

      if (cand_st.res_norm < st.res_norm) {
        const double rel_change =
            (st.res_norm - cand_st.res_norm) / std::max(st.res_norm, 1e-300);
        alpha = cand;
        st = std::move(cand_st);
        lambda = std::max(lambda * opts.lm_scale_down, 1e-12);
        accepted = true;
        if (rel_change < opts.residual_tol || delta.norm() < opts.step_tol) {
          converged = true;
        }
        break;
      }
      lambda *= opts.lm_scale_up;
    }

    if (!accepted) break;  // retries exhausted: best-so-far, converged=false
    if (converged) break;
  }

  VarProResult result;
  result.alpha = alpha;
  result.B = st.B;
  result.info.converged = converged;
  result.info.iterations = iterations;
  result.info.final_relative_residual =
      y_norm > 0.0 ? st.res_norm / y_norm : st.res_norm;
  result.info.constraint_active_count = 0;
  for (Eigen::Index j = 0; j < r; ++j) {
    const bool active =
        (c == EigConstraint::ImaginaryAxis) ||
        (c == EigConstraint::LeftHalfPlane && alpha(j).real() >= 0.0);
    if (active) ++result.info.constraint_active_count;
  }
  return result;
}

Eigen::MatrixXcd varpro_residual(const SnapshotMatrix& X, const TimeGrid& t,
                                 const Eigen::VectorXcd& alpha) {
  check_inputs(X, t, alpha);
  return project_onto_basis(alpha, t, data_transposed(X)).R;
}

Eigen::MatrixXd varpro_jacobian_dense(const SnapshotMatrix& X,
                                      const TimeGrid& t,
                                      const Eigen::VectorXcd& alpha) {
  check_inputs(X, t, alpha);
  const Eigen::MatrixXcd Y = data_transposed(X);
  const ProjectionState st = project_onto_basis(alpha, t, Y);
  const JacobianFactors f = jacobian_factors(t, st);

  const Eigen::Index m = st.T.rows();
  const Eigen::Index n = st.B.cols();
  const Eigen::Index r = alpha.size();
  Eigen::MatrixXd J(2 * m * n, 2 * r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const Eigen::MatrixXcd outer_pa = f.P.col(j) * f.A.col(j).transpose();
    const Eigen::MatrixXcd outer_gh = f.G.col(j) * f.H.col(j).transpose();
    const Eigen::MatrixXcd cre = -(outer_pa + outer_gh);
    const Eigen::MatrixXcd cim = Cplx(0.0, -1.0) * (outer_pa - outer_gh);
    for (Eigen::Index q = 0; q < n; ++q) {
      for (Eigen::Index k = 0; k < m; ++k) {
        J(q * m + k, 2 * j) = cre(k, q).real();
        J(m * n + q * m + k, 2 * j) = cre(k, q).imag();
        J(q * m + k, 2 * j + 1) = cim(k, q).real();
        J(m * n + q * m + k, 2 * j + 1) = cim(k, q).imag();
      }
    }
  }
  return J;
}

}  // namespace specdmd
