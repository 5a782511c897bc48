#include "specdmd/synth.hpp"

#include <cmath>
#include <complex>

#include "specdmd/optdmd.hpp"
#include "specdmd/rng.hpp"

namespace specdmd {

namespace {

using Cplx = std::complex<double>;

void check_conjugate_closed(const Eigen::VectorXcd& eigs) {
  const Eigen::Index r = eigs.size();
  std::vector<bool> used(static_cast<std::size_t>(r), false);
  for (Eigen::Index j = 0; j < r; ++j) {
    if (used[static_cast<std::size_t>(j)] ||
        std::abs(eigs(j).imag()) < 1e-14) {
      continue;
    }
    bool found = false;
    for (Eigen::Index k = j + 1; k < r; ++k) {
      if (!used[static_cast<std::size_t>(k)] &&
          std::abs(std::conj(eigs(k)) - eigs(j)) < 1e-12) {
        used[static_cast<std::size_t>(k)] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      throw validation_error(
          "gen_exponential_mixture: eigs must be conjugate-closed");
    }
  }
}

Eigen::VectorXd random_unit(Rng& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

}  // namespace

MixtureData gen_exponential_mixture(const MixtureSpec& spec) {
  if (spec.n < 1) {
    throw validation_error("gen_exponential_mixture: n must be >= 1");
  }
  if (spec.eigs.size() < 1) {
    throw validation_error("gen_exponential_mixture: eigs must be non-empty");
  }
  if (spec.noise_sigma < 0.0) {
    throw validation_error("gen_exponential_mixture: noise_sigma must be >= 0");
  }
  check_conjugate_closed(spec.eigs);

  const Eigen::Index r = spec.eigs.size();
  const Eigen::Index n = spec.n;
  Rng rng_mode(spec.mode_seed);
  Rng rng_amp(spec.amp_seed);

  Eigen::MatrixXcd Phi = Eigen::MatrixXcd::Zero(n, r);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(r);
  std::vector<bool> done(static_cast<std::size_t>(r), false);
  const double two_pi = 2.0 * 3.14159265358979323846;

  for (Eigen::Index j = 0; j < r; ++j) {
    if (done[static_cast<std::size_t>(j)]) continue;
    if (std::abs(spec.eigs(j).imag()) < 1e-14) {
      Eigen::VectorXd v = random_unit(rng_mode, n);
      Phi.col(j) = (v / v.norm()).cast<Cplx>();
      b(j) = 0.5 + rng_amp.uniform();
      done[static_cast<std::size_t>(j)] = true;
    } else {
      Eigen::Index partner = -1;
      for (Eigen::Index k = j + 1; k < r; ++k) {
        if (!done[static_cast<std::size_t>(k)] &&
            std::abs(std::conj(spec.eigs(k)) - spec.eigs(j)) < 1e-12) {
          partner = k;
          break;
        }
      }
      if (partner < 0) {
        throw validation_error(
            "gen_exponential_mixture: eigs must be conjugate-closed");
      }
      Eigen::VectorXd vr = random_unit(rng_mode, n);
      Eigen::VectorXd vi = random_unit(rng_mode, n);
      Eigen::VectorXcd v = vr.cast<Cplx>() + Cplx(0.0, 1.0) * vi.cast<Cplx>();
      v /= v.norm();
      Phi.col(j) = v;
      const double mag = 0.5 + rng_amp.uniform();
      const double phase = two_pi * rng_amp.uniform();
      b(j) = mag * std::exp(Cplx(0.0, phase));
      done[static_cast<std::size_t>(j)] = true;
      Phi.col(partner) = v.conjugate();
      b(partner) = std::conj(b(j));
      done[static_cast<std::size_t>(partner)] = true;
    }
  }

  MixtureData out;
  out.truth.modes = Phi;
  out.truth.eigs = spec.eigs;
  out.truth.amps = b;
  out.truth.rank = static_cast<int>(r);
  out.truth.train_span = {spec.times.front(), spec.times.back()};

  SnapshotMatrix clean = evaluate(out.truth, spec.times);
  if (spec.noise_sigma > 0.0) {
    Rng rng_noise(spec.noise_seed);
    const double rms =
        clean.values.norm() / std::sqrt(static_cast<double>(
                                  clean.values.size()));
    Eigen::MatrixXd noise(clean.rows(), clean.cols());
    for (Eigen::Index k = 0; k < noise.cols(); ++k) {
      for (Eigen::Index i = 0; i < noise.rows(); ++i) {
        noise(i, k) = rng_noise.normal();
      }
    }
    clean.values += spec.noise_sigma * rms * noise;
  }
  out.data = std::move(clean);
  return out;
}

SnapshotSet gen_traveling_daynight(const DayNightSpec& spec) {
  if (spec.lons.empty()) {
    throw validation_error("gen_traveling_daynight: lons must be non-empty");
  }
  if (spec.samples_per_day < 1 || spec.n_days < 1) {
    throw validation_error(
        "gen_traveling_daynight: samples_per_day and n_days must be >= 1");
  }
  if (!(spec.day_fraction > 0.0 && spec.day_fraction < 1.0) ||
      spec.day_fraction * spec.samples_per_day < 1.0) {
    throw validation_error(
        "gen_traveling_daynight: day_fraction in (0,1) with "
        "day_fraction*samples_per_day >= 1 required");
  }

  const auto n = static_cast<Eigen::Index>(spec.lons.size());
  const Eigen::Index m =
      static_cast<Eigen::Index>(spec.samples_per_day) * spec.n_days;
  const double pi = 3.14159265358979323846;

  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double offset = spec.lons[static_cast<std::size_t>(i)] / 360.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const double t = static_cast<double>(k) / spec.samples_per_day;
      double phase = std::fmod(t + offset, 1.0);
      if (phase < 0.0) phase += 1.0;
      if (phase < spec.day_fraction) {
        values(i, k) =
            spec.profile == DayNightSpec::Profile::HalfSine
                ? spec.amplitude * std::sin(pi * phase / spec.day_fraction)
                : spec.amplitude;
      }
    }
  }

  SnapshotSet set;
  set.meta.lons = spec.lons;
  set.meta.lats = {0.0};
  set.meta.levs = {0};
  set.meta.species = "synthetic";
  set.meta.kind = DataKind::CONC;
  set.meta.samples_per_day = spec.samples_per_day;
  set.data = SnapshotMatrix(
      std::move(values),
      TimeGrid::uniform(0.0, 1.0 / spec.samples_per_day,
                        static_cast<std::size_t>(m)));
  set.validate();
  return set;
}

}  // namespace specdmd
