#pragma once

#include <cstdint>

#include "specdmd/exactdmd.hpp"
#include "specdmd/types.hpp"

namespace specdmd {

/// Planted exponential mixture: random unit modes and amplitudes
/// (conjugate-paired so the data is real) plus optional Gaussian noise scaled
/// by the signal RMS.
struct MixtureSpec {
  int n = 1;
  Eigen::VectorXcd eigs;  // conjugate-closed
  std::uint64_t mode_seed = 1;
  std::uint64_t amp_seed = 2;
  std::uint64_t noise_seed = 3;
  double noise_sigma = 0.0;
  TimeGrid times;
};

struct MixtureData {
  SnapshotMatrix data;
  DmdModel truth;
};

MixtureData gen_exponential_mixture(const MixtureSpec& spec);

/// Traveling day/night pattern: the cell at longitude L follows
/// amplitude*profile(phase) while phase = (t + L/360) mod 1 lies inside the
/// day window [0, day_fraction), and is 0 at night.
struct DayNightSpec {
  enum class Profile { HalfSine, Square };

  std::vector<double> lons;
  int samples_per_day = 72;
  int n_days = 1;
  double day_fraction = 0.5;
  Profile profile = Profile::HalfSine;
  double amplitude = 1.0;
};

SnapshotSet gen_traveling_daynight(const DayNightSpec& spec);

}  // namespace specdmd
