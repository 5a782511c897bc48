#pragma once

#include <cstdint>
#include <vector>

#include "specdmd/optdmd.hpp"
#include "specdmd/rng.hpp"

namespace specdmd {

/// Bagging configuration: K trials of p snapshots each.
struct BagSpec {
  int K = 100;
  int p = 216;
  std::uint64_t seed = 0;
};

struct TrialModel {
  DmdModel model;  // aligned to the reference eigenvalue order
  SolveInfo info;
  bool converged = false;
};

struct Ensemble {
  DmdModel reference;
  SolveInfo reference_info;
  std::vector<TrialModel> trials;
};

struct EnsembleStats {
  Eigen::VectorXcd mean_eigs;
  Eigen::VectorXd var_eigs;
  Eigen::VectorXcd mean_amps;
  Eigen::VectorXd var_amps;
  Eigen::MatrixXcd mean_modes;
  Eigen::MatrixXd var_modes;
  int converged_trials = 0;
  int total_trials = 0;
};

/// p distinct indices in [0, m), uniform without replacement, sorted
/// ascending.  Requires p < m.
std::vector<int> draw_bag(int m, int p, Rng& rng);

/// Greedy minimum-distance matching of trial eigenvalues to reference
/// eigenvalues; returns pi with trial[pi[j]] matched to ref[j].
std::vector<int> align_to_reference(const Eigen::VectorXcd& trial_eigs,
                                    const Eigen::VectorXcd& ref_eigs);

/// Bagging-ensemble optimized DMD: fits the reference on the full data, then
/// K trials on random column subsets (original timestamps, per-trial RNG
/// stream derived from the master seed), each seeded with the reference
/// eigenvalues and aligned to them.  Throws when the reference fit fails or
/// fewer than 2 trials converge.
Ensemble fit_ensemble(const SnapshotMatrix& X, int r, EigConstraint c,
                      const BagSpec& spec, const VarProOptions& opts = {});

/// Per-index complex mean and population variance <|x - <x>|^2> of
/// eigenvalues, amplitudes and modes over the converged trials (>= 2).
EnsembleStats ensemble_stats(const Ensemble& e);

}  // namespace specdmd
