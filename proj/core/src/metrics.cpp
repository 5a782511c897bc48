#include "specdmd/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace specdmd {

double percentile(const std::vector<double>& values, double p) {
  if (values.empty()) {
    throw validation_error("percentile: empty sample");
  }
  if (p < 0.0 || p > 100.0) {
    throw validation_error("percentile: p must lie in [0, 100]");
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double pos = (static_cast<double>(sorted.size()) - 1.0) * p / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= sorted.size()) {
    return sorted.back();
  }
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ForecastReport daily_error_report(const SnapshotMatrix& X_true,
                                  const SnapshotMatrix& X_hat,
                                  int samples_per_day) {
  if (X_true.rows() != X_hat.rows() || X_true.cols() != X_hat.cols()) {
    throw validation_error("daily_error_report: shape mismatch");
  }
  if (samples_per_day < 1 || X_true.cols() % samples_per_day != 0) {
    throw validation_error(
        "daily_error_report: column count must be divisible by "
        "samples_per_day");
  }
  const Eigen::Index n = X_true.rows();
  const Eigen::Index n_days = X_true.cols() / samples_per_day;
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  ForecastReport report;
  for (Eigen::Index d = 0; d < n_days; ++d) {
    std::vector<double> sample;
    sample.reserve(static_cast<std::size_t>(n * samples_per_day));
    for (Eigen::Index k = d * samples_per_day; k < (d + 1) * samples_per_day;
         ++k) {
      const double rms = X_true.values.col(k).norm() / sqrt_n;
      if (rms == 0.0) continue;  // normalization undefined for this column
      for (Eigen::Index i = 0; i < n; ++i) {
        sample.push_back(
            std::abs(X_true.values(i, k) - X_hat.values(i, k)) / rms);
      }
    }
    if (sample.empty()) {
      throw validation_error("daily_error_report: day " + std::to_string(d) +
                             " has only all-zero true columns");
    }
    double mean = 0.0;
    for (double v : sample) mean += v;
    mean /= static_cast<double>(sample.size());

    report.day_index.push_back(static_cast<int>(d));
    report.mean_rel_err.push_back(mean);
    report.lo95.push_back(percentile(sample, 2.5));
    report.hi95.push_back(percentile(sample, 97.5));
  }
  return report;
}

std::vector<double> trimmed_sample(const std::vector<double>& values,
                                   double lo_pct, double hi_pct) {
  if (!(lo_pct >= 0.0 && lo_pct < hi_pct && hi_pct <= 100.0)) {
    throw validation_error("trimmed_sample: requires 0 <= lo < hi <= 100");
  }
  if (values.size() < 3) {
    throw validation_error("trimmed_sample: needs at least 3 values");
  }
  const double lo = percentile(values, lo_pct);
  const double hi = percentile(values, hi_pct);
  std::vector<double> kept;
  for (double v : values) {
    if (v >= lo && v <= hi) kept.push_back(v);
  }
  if (kept.empty()) {
    throw validation_error("trimmed_sample: trim removed every value");
  }
  return kept;
}

GaussianFit fit_gaussian_to_density(const std::vector<double>& centers,
                                    const std::vector<double>& densities,
                                    double mu0, double sigma0) {
  if (centers.size() != densities.size() || centers.size() < 3) {
    throw validation_error(
        "fit_gaussian_to_density: needs >= 3 matching (center, density) "
        "pairs");
  }
  if (!(sigma0 > 0.0)) {
    throw validation_error("fit_gaussian_to_density: sigma0 must be > 0");
  }
  const auto nb = centers.size();
  const double inv_sqrt_2pi = 0.3989422804014326779;

  const auto sse_at = [&](double mu, double sigma) {
    double sse = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const double z = (centers[b] - mu) / sigma;
      const double f = inv_sqrt_2pi / sigma * std::exp(-0.5 * z * z);
      const double d = densities[b] - f;
      sse += d * d;
    }
    return sse;
  };

  double mu = mu0;
  double sigma = sigma0;
  double sse = sse_at(mu, sigma);
  double lambda = 1e-3;
  bool done = false;

  for (int it = 0; it < 200 && !done; ++it) {
    // Gauss-Newton step on residual density_b - N(center_b; mu, sigma).
    double j11 = 0.0, j12 = 0.0, j22 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      const double z = (centers[b] - mu) / sigma;
      const double f = inv_sqrt_2pi / sigma * std::exp(-0.5 * z * z);
      const double res = densities[b] - f;
      const double dmu = f * z / sigma;
      const double dsg = f * (z * z - 1.0) / sigma;
      j11 += dmu * dmu;
      j12 += dmu * dsg;
      j22 += dsg * dsg;
      g1 += dmu * res;
      g2 += dsg * res;
    }
    bool stepped = false;
    for (int retry = 0; retry < 40; ++retry) {
      const double a11 = j11 * (1.0 + lambda);
      const double a22 = j22 * (1.0 + lambda);
      const double det = a11 * a22 - j12 * j12;
      if (det == 0.0 || !std::isfinite(det)) {
        lambda *= 4.0;
        continue;
      }
      const double dmu_step = (a22 * g1 - j12 * g2) / det;
      const double dsg_step = (a11 * g2 - j12 * g1) / det;
      const double mu_new = mu + dmu_step;
      const double sigma_new = std::abs(sigma + dsg_step);
      if (!(sigma_new > 0.0) || !std::isfinite(mu_new)) {
        lambda *= 4.0;
        continue;
      }
      const double sse_new = sse_at(mu_new, sigma_new);
      if (sse_new <= sse) {
        const double drop = sse - sse_new;
        mu = mu_new;
        sigma = sigma_new;
        sse = sse_new;
        lambda = std::max(lambda * 0.25, 1e-14);
        stepped = true;
        done = drop <= 1e-30 + 1e-16 * sse;
        break;
      }
      lambda *= 4.0;
    }
    if (!stepped) break;
  }

  return {mu, sigma, sse};
}

Histogram density_histogram(const std::vector<double>& values, int nbins) {
  if (nbins < 3) {
    throw validation_error("density_histogram: nbins must be >= 3");
  }
  if (values.size() < static_cast<std::size_t>(nbins)) {
    throw validation_error("density_histogram: needs at least nbins values");
  }
  double lo = values[0];
  double hi = values[0];
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw validation_error("density_histogram: values must be finite");
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    throw validation_error("density_histogram: zero spread");
  }

  const double width = (hi - lo) / nbins;
  std::vector<double> counts(static_cast<std::size_t>(nbins), 0.0);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= counts.size()) b = counts.size() - 1;
    counts[b] += 1.0;
  }
  Histogram h;
  h.centers.resize(counts.size());
  h.density.resize(counts.size());
  const double total = static_cast<double>(values.size()) * width;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    h.centers[b] = lo + (static_cast<double>(b) + 0.5) * width;
    h.density[b] = counts[b] / total;
  }
  return h;
}

GaussianFit gaussian_fit_histogram(const std::vector<double>& values,
                                   int nbins) {
  const Histogram h = density_histogram(values, nbins);
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return fit_gaussian_to_density(h.centers, h.density, mean,
                                 std::max(std::sqrt(var), 1e-12));
}

}  // namespace specdmd
