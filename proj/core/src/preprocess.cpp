#include "specdmd/preprocess.hpp"

#include <cmath>

namespace specdmd {

namespace {

int wrap_mod(long long v, int mod) {
  long long r = v % mod;
  if (r < 0) r += mod;
  return static_cast<int>(r);
}

// Circular right rotation (delay) of each row by its shift.
Eigen::MatrixXd rotate_rows(const Eigen::MatrixXd& X,
                            const std::vector<int>& shifts, int sign) {
  const Eigen::Index m = X.cols();
  Eigen::MatrixXd out(X.rows(), m);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const int s = shifts[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto src = wrap_mod(k - static_cast<long long>(sign) * s,
                                static_cast<int>(m));
      out(i, k) = X(i, src);
    }
  }
  return out;
}

}  // namespace

std::pair<SnapshotMatrix, ShiftPlan> shift_local_time(
    const SnapshotMatrix& X, const std::vector<double>& lons,
    int samples_per_day) {
  if (static_cast<Eigen::Index>(lons.size()) != X.rows()) {
    throw validation_error("shift_local_time: lons count must match rows");
  }
  if (samples_per_day < 1 || X.cols() < samples_per_day) {
    throw validation_error(
        "shift_local_time: need at least one full day of samples");
  }

  ShiftPlan plan;
  plan.samples_per_day = samples_per_day;
  plan.shifts.reserve(lons.size());
  for (double lon : lons) {
    const double raw = lon / 360.0 * samples_per_day;
    const auto rounded = static_cast<long long>(std::nearbyint(raw));
    plan.shifts.push_back(wrap_mod(rounded, samples_per_day));
  }

  return {SnapshotMatrix(rotate_rows(X.values, plan.shifts, +1), X.time),
          plan};
}

SnapshotMatrix unshift_local_time(const SnapshotMatrix& X,
                                  const ShiftPlan& plan) {
  if (static_cast<Eigen::Index>(plan.shifts.size()) != X.rows()) {
    throw validation_error("unshift_local_time: plan row count mismatch");
  }
  return SnapshotMatrix(rotate_rows(X.values, plan.shifts, -1), X.time);
}

std::pair<SnapshotMatrix, DayMask> isolate_daytime(const SnapshotMatrix& X,
                                                   const DaytimeMode& mode) {
  const Eigen::Index m = X.cols();
  std::vector<bool> keep(static_cast<std::size_t>(m), false);

  if (mode.kind == DaytimeMode::Kind::Threshold) {
    if (!(mode.epsilon > 0.0 && mode.epsilon < 1.0)) {
      throw validation_error("isolate_daytime: epsilon must lie in (0, 1)");
    }
    const double global_max = X.values.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < m; ++k) {
      keep[static_cast<std::size_t>(k)] =
          X.values.col(k).cwiseAbs().maxCoeff() > mode.epsilon * global_max;
    }
  } else {
    if (mode.samples_per_day < 1 || mode.start < 0 ||
        mode.start >= mode.end || mode.end > mode.samples_per_day) {
      throw validation_error(
          "isolate_daytime: window requires 0 <= start < end <= "
          "samples_per_day");
    }
    for (Eigen::Index k = 0; k < m; ++k) {
      const int within = static_cast<int>(k % mode.samples_per_day);
      keep[static_cast<std::size_t>(k)] =
          within >= mode.start && within < mode.end;
    }
  }

  std::vector<int> kept;
  for (Eigen::Index k = 0; k < m; ++k) {
    if (keep[static_cast<std::size_t>(k)]) kept.push_back(static_cast<int>(k));
  }
  if (kept.empty()) {
    throw validation_error("isolate_daytime: all columns removed");
  }

  Eigen::MatrixXd values(X.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    values.col(static_cast<Eigen::Index>(j)) = X.values.col(kept[j]);
  }
  TimeGrid kept_times = X.time.subset(kept);
  kept_times.uniform_dt.reset();

  DayMask mask{std::move(keep), kept_times};
  return {SnapshotMatrix(std::move(values), std::move(kept_times)),
          std::move(mask)};
}

}  // namespace specdmd
