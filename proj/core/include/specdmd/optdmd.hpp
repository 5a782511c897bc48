#pragma once

#include <optional>
#include <vector>

#include "specdmd/exactdmd.hpp"
#include "specdmd/varpro.hpp"

namespace specdmd {

/// Reconstruction error against rank, one entry per scanned rank.
struct ErrorCurve {
  std::vector<int> ranks;
  std::vector<double> rel_errors;
  std::vector<bool> converged_flags;
};

struct FitResult {
  DmdModel model;
  SolveInfo info;
};

/// Optimized DMD: eigenvalues from solve_varpro, seeded by alpha0 when given
/// and otherwise by fit_exact (on the whole grid when uniform, else on the
/// largest uniform prefix; at least r+1 uniform samples are required).
/// Mode j is row j of B normalized to unit 2-norm, with the norm folded into
/// the amplitude so that evaluate() reproduces T*B exactly.
FitResult fit_optdmd(const SnapshotMatrix& X, int r, EigConstraint c,
                     const VarProOptions& opts = {},
                     const std::optional<Eigen::VectorXcd>& alpha0 = {});

/// Re(Phi diag(b) exp(omega t)) at the given times; times beyond train_span
/// are the forecast.
SnapshotMatrix evaluate(const DmdModel& model, const TimeGrid& t);

/// ||X - Xhat||_F / ||X||_F.
double relative_error(const SnapshotMatrix& X, const SnapshotMatrix& Xhat);

/// Fits each rank independently (fresh initialization) and records the
/// in-sample relative error; per-rank failures become converged=false with a
/// +inf error sentinel.
ErrorCurve rank_scan(const SnapshotMatrix& X, const std::vector<int>& ranks,
                     EigConstraint c, const VarProOptions& opts = {});

struct RankChoice {
  int rank = 0;
  bool warning = false;  // fallback branch taken
};

/// Elbow pick: the smallest converged rank after which every later relative
/// improvement (err[i]-err[i+1])/err[i] stays below flat_tol.  When no rank
/// qualifies, returns the largest converged rank with the warning flag set.
RankChoice select_rank(const ErrorCurve& curve, double flat_tol = 0.02);

}  // namespace specdmd
