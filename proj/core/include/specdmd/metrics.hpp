#pragma once

#include <vector>

#include "specdmd/types.hpp"

namespace specdmd {

/// Per-day mean relative error with the 2.5/97.5 percentile band.
struct ForecastReport {
  std::vector<int> day_index;
  std::vector<double> mean_rel_err;
  std::vector<double> lo95;
  std::vector<double> hi95;
};

struct GaussianFit {
  double mu = 0.0;
  double sigma = 1.0;
  double sse = 0.0;
};

/// Linear-interpolation percentile at fractional position (N-1)*p/100 of the
/// sorted sample.
double percentile(const std::vector<double>& values, double p);

/// Per-cell relative errors e_{i,k} = |X_true - X_hat|_{i,k} divided by the
/// RMS of the true column (2-norm / sqrt(n)), aggregated per day: mean plus
/// the 2.5 and 97.5 percentiles.  All-zero true columns are excluded from the
/// day's sample; a day consisting only of zero columns is an error.
ForecastReport daily_error_report(const SnapshotMatrix& X_true,
                                  const SnapshotMatrix& X_hat,
                                  int samples_per_day);

/// Values v with P_lo <= v <= P_hi (linear-interpolation percentiles), in
/// stable original order.
std::vector<double> trimmed_sample(const std::vector<double>& values,
                                   double lo_pct = 10.0,
                                   double hi_pct = 90.0);

/// Equal-width density-normalized histogram over [min, max].
struct Histogram {
  std::vector<double> centers;
  std::vector<double> density;
};

Histogram density_histogram(const std::vector<double>& values, int nbins);

/// Least-squares fit of a normal density to (center, density) pairs,
/// Levenberg-Marquardt from the given initializer.
GaussianFit fit_gaussian_to_density(const std::vector<double>& centers,
                                    const std::vector<double>& densities,
                                    double mu0, double sigma0);

/// Equal-width density-normalized histogram over [min, max] followed by
/// fit_gaussian_to_density, initialized at the sample moments.
GaussianFit gaussian_fit_histogram(const std::vector<double>& values,
                                   int nbins = 20);

}  // namespace specdmd
