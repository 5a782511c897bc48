#pragma once

#include <utility>
#include <vector>

#include "specdmd/types.hpp"

namespace specdmd {

/// Per-row circular shifts (in samples) applied by shift_local_time.
struct ShiftPlan {
  std::vector<int> shifts;
  int samples_per_day = 1;
};

/// Columns retained by isolate_daytime.
struct DayMask {
  std::vector<bool> keep;
  TimeGrid kept_times;
};

/// Daytime-isolation rule: keep columns whose max |value| exceeds
/// epsilon * global max (Threshold), or whose within-day sample index lies in
/// [start, end) (Window).
struct DaytimeMode {
  enum class Kind { Threshold, Window };
  Kind kind = Kind::Threshold;
  double epsilon = 1e-3;
  int start = 0;
  int end = 0;
  int samples_per_day = 1;

  static DaytimeMode threshold(double eps) {
    DaytimeMode m;
    m.kind = Kind::Threshold;
    m.epsilon = eps;
    return m;
  }
  static DaytimeMode window(int start, int end, int samples_per_day) {
    DaytimeMode m;
    m.kind = Kind::Window;
    m.start = start;
    m.end = end;
    m.samples_per_day = samples_per_day;
    return m;
  }
};

/// Aligns local solar time with the prime meridian: row i is circularly
/// rotated by shifts[i] = round(lons[i]/360 * samples_per_day) samples
/// (rounding ties to even, reduced mod samples_per_day), delaying eastern
/// longitudes so their local day lines up with UTC.  Series wrap circularly.
/// lons must match the rows of X 1:1.
std::pair<SnapshotMatrix, ShiftPlan> shift_local_time(
    const SnapshotMatrix& X, const std::vector<double>& lons,
    int samples_per_day);

/// Exact inverse of shift_local_time for the returned plan.
SnapshotMatrix unshift_local_time(const SnapshotMatrix& X,
                                  const ShiftPlan& plan);

/// Drops night-time columns per the mode; the result carries a non-uniform
/// TimeGrid (uniform_dt is not preserved).  Throws when every column would be
/// removed.
std::pair<SnapshotMatrix, DayMask> isolate_daytime(const SnapshotMatrix& X,
                                                   const DaytimeMode& mode);

}  // namespace specdmd
