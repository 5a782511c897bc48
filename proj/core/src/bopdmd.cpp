#include "specdmd/bopdmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace specdmd {

std::vector<int> draw_bag(int m, int p, Rng& rng) {
  if (p < 1 || p >= m) {
    throw validation_error("draw_bag requires 1 <= p < m");
  }
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first p entries become the sample.
  for (int i = 0; i < p; ++i) {
    const auto j =
        i + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - i)));
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(p));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<int> align_to_reference(const Eigen::VectorXcd& trial_eigs,
                                    const Eigen::VectorXcd& ref_eigs) {
  const Eigen::Index r = ref_eigs.size();
  if (trial_eigs.size() != r) {
    throw validation_error("align_to_reference: length mismatch");
  }
  std::vector<int> perm(static_cast<std::size_t>(r), -1);
  std::vector<bool> trial_used(static_cast<std::size_t>(r), false);
  std::vector<bool> ref_used(static_cast<std::size_t>(r), false);
  // Repeatedly pair the globally closest unmatched (trial, ref) pair.
  for (Eigen::Index step = 0; step < r; ++step) {
    double best = std::numeric_limits<double>::infinity();
    int bi = -1;
    int bj = -1;
    for (Eigen::Index i = 0; i < r; ++i) {
      if (trial_used[static_cast<std::size_t>(i)]) continue;
      for (Eigen::Index j = 0; j < r; ++j) {
        if (ref_used[static_cast<std::size_t>(j)]) continue;
        const double d = std::abs(trial_eigs(i) - ref_eigs(j));
        if (d < best) {
          best = d;
          bi = static_cast<int>(i);
          bj = static_cast<int>(j);
        }
      }
    }
    perm[static_cast<std::size_t>(bj)] = bi;
    trial_used[static_cast<std::size_t>(bi)] = true;
    ref_used[static_cast<std::size_t>(bj)] = true;
  }
  return perm;
}

namespace {

DmdModel permuted(const DmdModel& model, const std::vector<int>& perm) {
  DmdModel out = model;
  const auto r = static_cast<Eigen::Index>(perm.size());
  for (Eigen::Index j = 0; j < r; ++j) {
    const int src = perm[static_cast<std::size_t>(j)];
    out.eigs(j) = model.eigs(src);
    out.amps(j) = model.amps(src);
    out.modes.col(j) = model.modes.col(src);
  }
  return out;
}

}  // namespace

Ensemble fit_ensemble(const SnapshotMatrix& X, int r, EigConstraint c,
                      const BagSpec& spec, const VarProOptions& opts) {
  const auto m = static_cast<int>(X.cols());
  if (spec.K < 1) {
    throw validation_error("fit_ensemble: K must be >= 1");
  }
  if (spec.p < 1 || spec.p >= m) {
    throw validation_error("fit_ensemble: requires 1 <= p < m");
  }

  Ensemble e;
  {
    FitResult ref = fit_optdmd(X, r, c, opts);
    e.reference = std::move(ref.model);
    e.reference_info = ref.info;
  }

  int converged = 0;
  e.trials.reserve(static_cast<std::size_t>(spec.K));
  for (int k = 0; k < spec.K; ++k) {
    Rng rng = Rng::derive(spec.seed, static_cast<std::uint64_t>(k));
    const std::vector<int> bag = draw_bag(m, spec.p, rng);

    Eigen::MatrixXd sub(X.rows(), static_cast<Eigen::Index>(bag.size()));
    for (std::size_t i = 0; i < bag.size(); ++i) {
      sub.col(static_cast<Eigen::Index>(i)) = X.values.col(bag[i]);
    }
    SnapshotMatrix sub_matrix(std::move(sub), X.time.subset(bag));

    TrialModel trial;
    try {
      FitResult fit =
          fit_optdmd(sub_matrix, r, c, opts, e.reference.eigs);
      const std::vector<int> perm =
          align_to_reference(fit.model.eigs, e.reference.eigs);
      trial.model = permuted(fit.model, perm);
      trial.info = fit.info;
      trial.converged = fit.info.converged;
    } catch (const validation_error&) {
      trial.converged = false;
    }
    if (trial.converged) ++converged;
    e.trials.push_back(std::move(trial));
  }

  if (converged < 2) {
    throw validation_error(
        "fit_ensemble: fewer than 2 trials converged (" +
        std::to_string(converged) + " of " + std::to_string(spec.K) + ")");
  }
  return e;
}

EnsembleStats ensemble_stats(const Ensemble& e) {
  std::vector<const DmdModel*> kept;
  for (const auto& trial : e.trials) {
    if (trial.converged) kept.push_back(&trial.model);
  }
  const auto count = static_cast<double>(kept.size());
  if (kept.size() < 2) {
    throw validation_error("ensemble_stats: needs >= 2 converged trials");
  }

  const Eigen::Index r = e.reference.eigs.size();
  const Eigen::Index n = e.reference.modes.rows();

  EnsembleStats st;
  st.converged_trials = static_cast<int>(kept.size());
  st.total_trials = static_cast<int>(e.trials.size());

  // Means and deviations are computed relative to the first kept trial, so
  // an all-identical ensemble yields a variance of exactly zero.
  const DmdModel& base = *kept.front();
  Eigen::VectorXcd eig_shift = Eigen::VectorXcd::Zero(r);
  Eigen::VectorXcd amp_shift = Eigen::VectorXcd::Zero(r);
  Eigen::MatrixXcd mode_shift = Eigen::MatrixXcd::Zero(n, r);
  for (const DmdModel* mdl : kept) {
    eig_shift += mdl->eigs - base.eigs;
    amp_shift += mdl->amps - base.amps;
    mode_shift += mdl->modes - base.modes;
  }
  eig_shift /= count;
  amp_shift /= count;
  mode_shift /= count;
  st.mean_eigs = base.eigs + eig_shift;
  st.mean_amps = base.amps + amp_shift;
  st.mean_modes = base.modes + mode_shift;

  st.var_eigs = Eigen::VectorXd::Zero(r);
  st.var_amps = Eigen::VectorXd::Zero(r);
  st.var_modes = Eigen::MatrixXd::Zero(n, r);
  for (const DmdModel* mdl : kept) {
    st.var_eigs += (mdl->eigs - base.eigs - eig_shift).cwiseAbs2();
    st.var_amps += (mdl->amps - base.amps - amp_shift).cwiseAbs2();
    st.var_modes += (mdl->modes - base.modes - mode_shift).cwiseAbs2();
  }
  st.var_eigs /= count;   // population convention, divisor = count
  st.var_amps /= count;
  st.var_modes /= count;
  return st;
}

}  // namespace specdmd
