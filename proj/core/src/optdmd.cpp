#include "specdmd/optdmd.hpp"

#include <cmath>
#include <limits>

namespace specdmd {

namespace {

// Longest prefix of t with uniform spacing (relative tolerance 1e-9).
Eigen::Index uniform_prefix_length(const TimeGrid& t) {
  if (t.uniform_dt) return static_cast<Eigen::Index>(t.size());
  const double dt0 = t.times[1] - t.times[0];
  Eigen::Index len = 2;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    if (std::abs(t.times[k + 1] - t.times[k] - dt0) > 1e-9 * dt0) break;
    ++len;
  }
  return len;
}

Eigen::VectorXcd initial_alpha(const SnapshotMatrix& X, int r) {
  const Eigen::Index prefix = uniform_prefix_length(X.time);
  if (prefix < r + 1) {
    throw validation_error(
        "fit_optdmd: no uniform prefix of length >= r+1 for exact-DMD "
        "initialization; pass an explicit alpha0");
  }
  if (prefix == X.cols()) {
    return fit_exact(X, r).eigs;
  }
  std::vector<double> ts(X.time.times.begin(), X.time.times.begin() + prefix);
  SnapshotMatrix head(X.values.leftCols(prefix), TimeGrid(std::move(ts)));
  return fit_exact(head, r).eigs;
}

}  // namespace

FitResult fit_optdmd(const SnapshotMatrix& X, int r, EigConstraint c,
                     const VarProOptions& opts,
                     const std::optional<Eigen::VectorXcd>& alpha0) {
  if (r < 1 || r > std::min(X.rows(), X.cols() - 1)) {
    throw validation_error("fit_optdmd requires 1 <= r <= min(n, m-1)");
  }
  Eigen::VectorXcd a0;
  if (alpha0) {
    if (alpha0->size() != r) {
      throw validation_error("fit_optdmd: alpha0 length must equal r");
    }
    a0 = *alpha0;
  } else {
    a0 = initial_alpha(X, r);
  }

  VarProResult sol = solve_varpro(X, X.time, a0, c, opts);

  FitResult out;
  out.info = sol.info;
  out.model.rank = r;
  out.model.eigs = sol.alpha;
  out.model.train_span = {X.time.front(), X.time.back()};
  out.model.modes.resize(X.rows(), r);
  out.model.amps.resize(r);
  for (int j = 0; j < r; ++j) {
    // Mode j carries the direction (and phase) of row j of B; the row norm
    // becomes the amplitude, so Phi diag(b) T^T == (T B)^T exactly.
    const Eigen::VectorXcd row = sol.B.row(j).transpose();
    const double nrm = row.norm();
    if (nrm > 0.0) {
      out.model.modes.col(j) = row / nrm;
    } else {
      out.model.modes.col(j).setZero();
      out.model.modes(0, j) = 1.0;
    }
    out.model.amps(j) = nrm;
  }
  return out;
}

SnapshotMatrix evaluate(const DmdModel& model, const TimeGrid& t) {
  const Eigen::MatrixXcd T = eval_basis(model.eigs, t);  // m x r
  const Eigen::MatrixXcd scaled = model.modes * model.amps.asDiagonal();
  return SnapshotMatrix((scaled * T.transpose()).real(), t);
}

double relative_error(const SnapshotMatrix& X, const SnapshotMatrix& Xhat) {
  if (X.rows() != Xhat.rows() || X.cols() != Xhat.cols()) {
    throw validation_error("relative_error: shape mismatch");
  }
  const double denom = X.values.norm();
  if (denom == 0.0) {
    throw validation_error("relative_error: ||X||_F is zero");
  }
  return (X.values - Xhat.values).norm() / denom;
}

ErrorCurve rank_scan(const SnapshotMatrix& X, const std::vector<int>& ranks,
                     EigConstraint c, const VarProOptions& opts) {
  for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
    if (!(ranks[i] < ranks[i + 1])) {
      throw validation_error("rank_scan: ranks must be strictly increasing");
    }
  }
  ErrorCurve curve;
  for (int r : ranks) {
    curve.ranks.push_back(r);
    try {
      const FitResult fit = fit_optdmd(X, r, c, opts);
      const double err = relative_error(X, evaluate(fit.model, X.time));
      curve.rel_errors.push_back(err);
      curve.converged_flags.push_back(fit.info.converged);
    } catch (const validation_error&) {
      curve.rel_errors.push_back(std::numeric_limits<double>::infinity());
      curve.converged_flags.push_back(false);
    }
  }
  return curve;
}

RankChoice select_rank(const ErrorCurve& curve, double flat_tol) {
  std::vector<int> ranks;
  std::vector<double> errs;
  for (std::size_t i = 0; i < curve.ranks.size(); ++i) {
    if (curve.converged_flags[i]) {
      ranks.push_back(curve.ranks[i]);
      errs.push_back(curve.rel_errors[i]);
    }
  }
  const std::size_t q = ranks.size();
  if (q < 2) {
    throw validation_error("select_rank: needs at least 2 converged entries");
  }

  std::vector<double> imp(q - 1);
  for (std::size_t i = 0; i + 1 < q; ++i) {
    imp[i] = errs[i] > 0.0 ? (errs[i] - errs[i + 1]) / errs[i] : 0.0;
  }

  // Smallest position whose strictly-later improvements are all below the
  // threshold; the improvement window must be non-empty (s <= q-3).
  for (std::size_t s = 0; s + 3 <= q; ++s) {
    bool all_flat = true;
    for (std::size_t i = s + 1; i < imp.size(); ++i) {
      if (!(imp[i] < flat_tol)) {
        all_flat = false;
        break;
      }
    }
    if (all_flat) {
      return {ranks[s], false};
    }
  }
  return {ranks[q - 1], true};
}

}  // namespace specdmd
