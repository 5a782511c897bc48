#include "specdmd/types.hpp"

#include <cmath>

namespace specdmd {

TimeGrid::TimeGrid(std::vector<double> ts) : times(std::move(ts)) {
  if (times.size() < 2) {
    throw validation_error("TimeGrid requires at least 2 samples");
  }
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (!(times[k] < times[k + 1])) {
      throw validation_error("TimeGrid times must be strictly increasing");
    }
  }
  for (double t : times) {
    if (!std::isfinite(t)) {
      throw validation_error("TimeGrid times must be finite");
    }
  }
  const double dt =
      (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  bool is_uniform = true;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (std::abs(times[k + 1] - times[k] - dt) > 1e-9 * dt) {
      is_uniform = false;
      break;
    }
  }
  if (is_uniform) {
    uniform_dt = dt;
  }
}

TimeGrid TimeGrid::uniform(double t0, double dt, std::size_t m) {
  std::vector<double> ts(m);
  for (std::size_t k = 0; k < m; ++k) {
    ts[k] = t0 + static_cast<double>(k) * dt;
  }
  return TimeGrid(std::move(ts));
}

TimeGrid TimeGrid::subset(const std::vector<int>& indices) const {
  std::vector<double> ts;
  ts.reserve(indices.size());
  for (int i : indices) {
    if (i < 0 || static_cast<std::size_t>(i) >= times.size()) {
      throw validation_error("TimeGrid subset index out of range");
    }
    ts.push_back(times[static_cast<std::size_t>(i)]);
  }
  return TimeGrid(std::move(ts));
}

SnapshotMatrix::SnapshotMatrix(Eigen::MatrixXd v, TimeGrid t)
    : values(std::move(v)), time(std::move(t)) {
  if (static_cast<std::size_t>(values.cols()) != time.size()) {
    throw validation_error(
        "SnapshotMatrix column count must equal TimeGrid length");
  }
  if (!values.allFinite()) {
    throw validation_error("SnapshotMatrix entries must be finite");
  }
}

std::string to_string(DataKind kind) {
  return kind == DataKind::CONC ? "CONC" : "TEND";
}

DataKind data_kind_from_string(const std::string& s) {
  if (s == "CONC") return DataKind::CONC;
  if (s == "TEND") return DataKind::TEND;
  throw validation_error("unknown data kind: " + s);
}

void GridMeta::validate() const {
  if (lons.empty() || lats.empty() || levs.empty()) {
    throw validation_error("GridMeta axes must be non-empty");
  }
  for (std::size_t i = 0; i + 1 < lons.size(); ++i) {
    if (!(lons[i] < lons[i + 1])) {
      throw validation_error("GridMeta lons must be sorted ascending, unique");
    }
  }
  for (double lon : lons) {
    if (lon < -180.0 || lon >= 180.0) {
      throw validation_error("GridMeta lons must lie in [-180, 180)");
    }
  }
  if (samples_per_day < 1) {
    throw validation_error("GridMeta samples_per_day must be >= 1");
  }
}

void SnapshotSet::validate() const {
  meta.validate();
  const auto want = static_cast<Eigen::Index>(meta.lons.size()) *
                    static_cast<Eigen::Index>(meta.lats.size()) *
                    static_cast<Eigen::Index>(meta.levs.size());
  if (data.rows() != want) {
    throw validation_error(
        "SnapshotSet row count must equal |lons|*|lats|*|levs|");
  }
}

}  // namespace specdmd
