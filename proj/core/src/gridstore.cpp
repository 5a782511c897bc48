#include "specdmd/gridstore.hpp"

#include <fstream>

#include "json.hpp"

namespace specdmd {

namespace {

std::filesystem::path with_ext(const std::filesystem::path& base,
                               const char* ext) {
  std::filesystem::path p = base;
  p += ext;
  return p;
}

}  // namespace

void save_snapshots(const SnapshotSet& set, const std::filesystem::path& path) {
  set.validate();
  if (!set.data.values.allFinite()) {
    throw validation_error("snapshot values must be finite");
  }

  nlohmann::json side;
  side["n"] = set.data.rows();
  side["m"] = set.data.cols();
  side["times"] = set.data.time.times;
  side["lons"] = set.meta.lons;
  side["lats"] = set.meta.lats;
  side["levs"] = set.meta.levs;
  side["species"] = set.meta.species;
  side["kind"] = to_string(set.meta.kind);
  side["samples_per_day"] = set.meta.samples_per_day;

  const auto raw_path = with_ext(path, ".f64");
  {
    std::ofstream raw(raw_path, std::ios::binary | std::ios::trunc);
    if (!raw) {
      throw io_error("cannot open for writing: " + raw_path.string());
    }
    // Eigen matrices are column-major, so snapshots are already contiguous.
    raw.write(reinterpret_cast<const char*>(set.data.values.data()),
              static_cast<std::streamsize>(sizeof(double) *
                                           set.data.values.size()));
    if (!raw) {
      throw io_error("write failed: " + raw_path.string());
    }
  }

  const auto json_path = with_ext(path, ".json");
  std::ofstream meta(json_path, std::ios::trunc);
  if (!meta) {
    throw io_error("cannot open for writing: " + json_path.string());
  }
  meta << side.dump(2) << "\n";
  if (!meta) {
    throw io_error("write failed: " + json_path.string());
  }
}

SnapshotSet load_snapshots(const std::filesystem::path& path) {
  const auto raw_path = with_ext(path, ".f64");
  const auto json_path = with_ext(path, ".json");

  std::ifstream meta(json_path);
  if (!meta) {
    throw io_error("cannot open: " + json_path.string());
  }
  nlohmann::json side;
  try {
    meta >> side;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("corrupt sidecar " + json_path.string() + ": " + e.what());
  }

  SnapshotSet set;
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  std::vector<double> times;
  try {
    n = side.at("n").get<Eigen::Index>();
    m = side.at("m").get<Eigen::Index>();
    times = side.at("times").get<std::vector<double>>();
    set.meta.lons = side.at("lons").get<std::vector<double>>();
    set.meta.lats = side.at("lats").get<std::vector<double>>();
    set.meta.levs = side.at("levs").get<std::vector<int>>();
    set.meta.species = side.at("species").get<std::string>();
    set.meta.kind = data_kind_from_string(side.at("kind").get<std::string>());
    set.meta.samples_per_day = side.at("samples_per_day").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw io_error("corrupt sidecar " + json_path.string() + ": " + e.what());
  }
  if (n < 1 || m < 1) {
    throw validation_error("sidecar declares empty matrix");
  }
  if (static_cast<Eigen::Index>(times.size()) != m) {
    throw io_error("corrupt sidecar " + json_path.string() +
                   ": times length disagrees with m");
  }

  std::ifstream raw(raw_path, std::ios::binary | std::ios::ate);
  if (!raw) {
    throw io_error("cannot open: " + raw_path.string());
  }
  const auto bytes = static_cast<std::uint64_t>(raw.tellg());
  const std::uint64_t want = static_cast<std::uint64_t>(n) *
                             static_cast<std::uint64_t>(m) * sizeof(double);
  if (bytes != want) {
    throw io_error("corrupt file " + raw_path.string() + ": has " +
                   std::to_string(bytes) + " bytes, sidecar implies " +
                   std::to_string(want));
  }
  raw.seekg(0);
  Eigen::MatrixXd values(n, m);
  raw.read(reinterpret_cast<char*>(values.data()),
           static_cast<std::streamsize>(want));
  if (!raw) {
    throw io_error("read failed: " + raw_path.string());
  }

  set.data = SnapshotMatrix(std::move(values), TimeGrid(std::move(times)));
  set.validate();
  return set;
}

SnapshotMatrix slice(const SnapshotSet& set, int lat_index, int lev_index) {
  const auto nlon = static_cast<Eigen::Index>(set.meta.lons.size());
  const auto nlat = static_cast<Eigen::Index>(set.meta.lats.size());
  const auto nlev = static_cast<Eigen::Index>(set.meta.levs.size());
  if (lat_index < 0 || lat_index >= nlat) {
    throw validation_error("lat_index out of range");
  }
  if (lev_index < 0 || lev_index >= nlev) {
    throw validation_error("lev_index out of range");
  }
  const Eigen::Index row0 = nlon * (lat_index + nlat * lev_index);
  return SnapshotMatrix(set.data.values.middleRows(row0, nlon),
                        set.data.time);
}

}  // namespace specdmd
