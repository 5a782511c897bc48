#pragma once

#include <filesystem>

#include "specdmd/bopdmd.hpp"
#include "specdmd/metrics.hpp"
#include "specdmd/optdmd.hpp"
#include "specdmd/preprocess.hpp"

namespace specdmd {

std::string to_string(EigConstraint c);
EigConstraint constraint_from_string(const std::string& s);

/// Model JSON: rank, eigs/amps as [re, im] pairs, modes as row-major nested
/// [re, im] arrays, train_span, constraint, converged.  Values round-trip to
/// full double precision (shortest round-trip decimals).
void save_model(const DmdModel& model, EigConstraint c, bool converged,
                const std::filesystem::path& path);

struct LoadedModel {
  DmdModel model;
  EigConstraint constraint = EigConstraint::Unconstrained;
  bool converged = false;
};

LoadedModel load_model(const std::filesystem::path& path);

void save_shift_plan(const ShiftPlan& plan, const std::filesystem::path& path);
ShiftPlan load_shift_plan(const std::filesystem::path& path);

/// EnsembleStats JSON mirroring the struct fields.
void save_ensemble_stats(const EnsembleStats& stats,
                         const std::filesystem::path& path);

/// CSV "trial,j,re,im,converged", one row per trial eigenvalue.
void write_trial_eigs_csv(const Ensemble& e, const std::filesystem::path& path);

/// CSV "rank,rel_error,converged".
void write_error_curve_csv(const ErrorCurve& curve,
                           const std::filesystem::path& path);

/// CSV "day,mean_rel_err,lo95,hi95".
void write_forecast_report_csv(const ForecastReport& report,
                               const std::filesystem::path& path);

/// CSV "bin_center,density".
void write_histogram_csv(const std::vector<double>& centers,
                         const std::vector<double>& densities,
                         const std::filesystem::path& path);

}  // namespace specdmd
