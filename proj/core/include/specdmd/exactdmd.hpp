#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "specdmd/types.hpp"

namespace specdmd {

/// The Phi / Omega / b triple of the exponential regression
/// x(t) = sum_j phi_j exp(omega_j t) b_j.  Mode columns have unit 2-norm;
/// eigenvalues are continuous-time, in 1/day.
struct DmdModel {
  Eigen::MatrixXcd modes;   // n x r
  Eigen::VectorXcd eigs;    // r
  Eigen::VectorXcd amps;    // r
  int rank = 0;
  std::pair<double, double> train_span{0.0, 0.0};
  std::vector<std::string> warnings;
};

/// Exact DMD: rank-r SVD of X1, eigendecomposition of the projected one-step
/// operator, modes X2 V S^-1 W (column-normalized, norms folded into the
/// amplitudes), omega = log(lambda)/dt on the principal branch, amplitudes by
/// least squares against all m snapshots.  Requires a uniform TimeGrid and
/// 1 <= r <= min(n, m-1); sigma_r < 1e-12*sigma_1 is a rank-deficiency error.
DmdModel fit_exact(const SnapshotMatrix& X, int r);

}  // namespace specdmd
