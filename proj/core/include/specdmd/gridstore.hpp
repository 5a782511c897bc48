#pragma once

#include <filesystem>

#include "specdmd/types.hpp"

namespace specdmd {

/// Writes <path>.f64 (raw little-endian doubles, column-major) and a
/// <path>.json sidecar with keys n, m, times, lons, lats, levs, species,
/// kind, samples_per_day.  load_snapshots(save_snapshots(s)) is the identity,
/// bit-for-bit on values.
void save_snapshots(const SnapshotSet& set, const std::filesystem::path& path);

/// Reads the pair written by save_snapshots.  Throws io_error when the .f64
/// byte count disagrees with the sidecar's n*m*8, validation_error when the
/// sidecar violates type invariants.
SnapshotSet load_snapshots(const std::filesystem::path& path);

/// The |lons| x m submatrix at a fixed latitude/level, rows ordered by lons.
SnapshotMatrix slice(const SnapshotSet& set, int lat_index, int lev_index);

}  // namespace specdmd
