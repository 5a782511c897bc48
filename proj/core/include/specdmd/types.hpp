#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specdmd {

/// Thrown when an input violates a documented precondition or type invariant.
class validation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown on file-system failures and corrupt/inconsistent on-disk data.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Sample times in days, possibly non-uniform.  uniform_dt is present iff the
/// spacing is uniform within a 1e-9 relative tolerance.
struct TimeGrid {
  std::vector<double> times;
  std::optional<double> uniform_dt;

  TimeGrid() = default;
  /// Validates monotonicity (strictly increasing, length >= 2) and detects
  /// uniform spacing.
  explicit TimeGrid(std::vector<double> ts);

  /// Uniform grid t0, t0+dt, ..., t0+(m-1)*dt.
  static TimeGrid uniform(double t0, double dt, std::size_t m);

  std::size_t size() const { return times.size(); }
  double front() const { return times.front(); }
  double back() const { return times.back(); }

  /// Sub-grid at the given (strictly increasing) indices.
  TimeGrid subset(const std::vector<int>& indices) const;
};

/// n spatial rows by m snapshot columns plus the sample times.
struct SnapshotMatrix {
  Eigen::MatrixXd values;
  TimeGrid time;

  SnapshotMatrix() = default;
  /// Validates finiteness and that column count matches the time grid.
  SnapshotMatrix(Eigen::MatrixXd v, TimeGrid t);

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

enum class DataKind { CONC, TEND };

std::string to_string(DataKind kind);
DataKind data_kind_from_string(const std::string& s);

/// Grid/metadata sidecar for a snapshot set.
struct GridMeta {
  std::vector<double> lons;
  std::vector<double> lats;
  std::vector<int> levs;
  std::string species;
  DataKind kind = DataKind::CONC;
  int samples_per_day = 1;

  void validate() const;
};

/// Snapshot matrix whose row index enumerates (lon, lat, lev) lon-fastest:
/// row = lon_i + |lons|*(lat_j + |lats|*lev_k).
struct SnapshotSet {
  GridMeta meta;
  SnapshotMatrix data;

  void validate() const;
};

}  // namespace specdmd
