// specdmd command-line driver: synth | preprocess | fit | rank-scan |
// forecast | bopdmd.  Options come from a JSON config file, with command-line
// flags taking precedence.  Validation failures print a single-line JSON
// record listing every offending field and exit 2; runtime failures print a
// runtime record and exit 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "specdmd/bopdmd.hpp"
#include "specdmd/gridstore.hpp"
#include "specdmd/metrics.hpp"
#include "specdmd/model_io.hpp"
#include "specdmd/optdmd.hpp"
#include "specdmd/preprocess.hpp"
#include "specdmd/rng.hpp"
#include "specdmd/synth.hpp"
#include "specdmd/types.hpp"
#include "specdmd/varpro.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace specdmd;

namespace {

/// Accumulates config violations so a single report can list all of them.
struct Violations {
  std::vector<std::string> fields;
  std::vector<std::string> notes;

  void add(const std::string& field, const std::string& why) {
    if (std::find(fields.begin(), fields.end(), field) == fields.end()) {
      fields.push_back(field);
    }
    notes.push_back(field + ": " + why);
  }
  bool empty() const { return fields.empty(); }
};

/// Config violation discovered after parsing (e.g. against the loaded data).
struct cli_validation_error : std::runtime_error {
  std::vector<std::string> fields;
  cli_validation_error(std::vector<std::string> f, const std::string& msg)
      : std::runtime_error(msg), fields(std::move(f)) {}
};

int report_validation(const std::vector<std::string>& fields,
                      const std::string& message) {
  json rec{{"error", "validation"}, {"fields", fields}, {"message", message}};
  std::cerr << rec.dump() << "\n";
  return 2;
}

int report_runtime(const std::string& message) {
  json rec{{"error", "runtime"}, {"message", message}};
  std::cerr << rec.dump() << "\n";
  return 1;
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string msg;
  for (const auto& n : notes) {
    if (!msg.empty()) msg += "; ";
    msg += n;
  }
  return msg;
}

/// Merged view over the config file and flag overrides (flags win).  Typed
/// getters record a violation and return the default on type mismatch.
struct Cfg {
  json file;
  json flags;
  Violations* v = nullptr;

  const json* find(const std::string& key) const {
    if (flags.contains(key)) return &flags.at(key);
    if (file.contains(key)) return &file.at(key);
    return nullptr;
  }
  bool has(const std::string& key) const { return find(key) != nullptr; }

  void check_keys(const std::set<std::string>& allowed) const {
    for (const auto& item : file.items()) {
      if (!allowed.count(item.key())) {
        v->add(item.key(), "unknown config key for this command");
      }
    }
  }

  int geti(const std::string& key, int def) const {
    const json* x = find(key);
    if (!x) return def;
    if (!x->is_number_integer()) {
      v->add(key, "expected an integer");
      return def;
    }
    return x->get<int>();
  }

  std::uint64_t getu(const std::string& key, std::uint64_t def) const {
    const json* x = find(key);
    if (!x) return def;
    if (x->is_number_unsigned()) return x->get<std::uint64_t>();
    if (x->is_number_integer() && x->get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(x->get<std::int64_t>());
    }
    v->add(key, "expected a non-negative integer");
    return def;
  }

  double getd(const std::string& key, double def) const {
    const json* x = find(key);
    if (!x) return def;
    if (!x->is_number()) {
      v->add(key, "expected a number");
      return def;
    }
    return x->get<double>();
  }

  std::string gets(const std::string& key, const std::string& def) const {
    const json* x = find(key);
    if (!x) return def;
    if (!x->is_string()) {
      v->add(key, "expected a string");
      return def;
    }
    return x->get<std::string>();
  }

  std::vector<int> get_int_list(const std::string& key) const {
    const json* x = find(key);
    std::vector<int> out;
    if (!x) return out;
    if (!x->is_array()) {
      v->add(key, "expected an array of integers");
      return out;
    }
    for (const auto& e : *x) {
      if (!e.is_number_integer()) {
        v->add(key, "expected an array of integers");
        return {};
      }
      out.push_back(e.get<int>());
    }
    return out;
  }

  Eigen::VectorXcd get_eigs(const std::string& key) const {
    const json* x = find(key);
    if (!x || !x->is_array() || x->empty()) {
      v->add(key, "expected a non-empty array of [re, im] pairs");
      return {};
    }
    Eigen::VectorXcd out(static_cast<Eigen::Index>(x->size()));
    Eigen::Index j = 0;
    for (const auto& e : *x) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number()) {
        v->add(key, "each eigenvalue must be a [re, im] pair");
        return {};
      }
      out(j++) = {e[0].get<double>(), e[1].get<double>()};
    }
    return out;
  }
};

VarProOptions read_varpro_options(const Cfg& c) {
  VarProOptions o;
  o.max_outer_iters = c.geti("max_outer_iters", o.max_outer_iters);
  o.lm_lambda0 = c.getd("lm_lambda0", o.lm_lambda0);
  o.lm_scale_up = c.getd("lm_scale_up", o.lm_scale_up);
  o.lm_scale_down = c.getd("lm_scale_down", o.lm_scale_down);
  o.residual_tol = c.getd("residual_tol", o.residual_tol);
  o.step_tol = c.getd("step_tol", o.step_tol);
  o.max_lm_retries = c.geti("max_lm_retries", o.max_lm_retries);
  if (o.max_outer_iters < 1) c.v->add("max_outer_iters", "must be >= 1");
  if (!(o.lm_lambda0 > 0)) c.v->add("lm_lambda0", "must be > 0");
  if (!(o.lm_scale_up > 1)) c.v->add("lm_scale_up", "must be > 1");
  if (!(o.lm_scale_down > 0 && o.lm_scale_down < 1)) {
    c.v->add("lm_scale_down", "must lie in (0, 1)");
  }
  if (!(o.residual_tol > 0)) c.v->add("residual_tol", "must be > 0");
  if (!(o.step_tol > 0)) c.v->add("step_tol", "must be > 0");
  if (o.max_lm_retries < 0) c.v->add("max_lm_retries", "must be >= 0");
  return o;
}

const std::set<std::string> kVarProKeys = {
    "max_outer_iters", "lm_lambda0",   "lm_scale_up", "lm_scale_down",
    "residual_tol",    "step_tol",     "max_lm_retries"};

std::set<std::string> with_varpro(std::set<std::string> keys) {
  keys.insert(kVarProKeys.begin(), kVarProKeys.end());
  return keys;
}

EigConstraint read_constraint(const Cfg& c) {
  const std::string s = c.gets("constraint", "lhp");
  try {
    return constraint_from_string(s);
  } catch (const validation_error&) {
    c.v->add("constraint", "must be one of lhp, imag, none");
    return EigConstraint::LeftHalfPlane;
  }
}

fs::path require_output(const Cfg& c) {
  const std::string out = c.gets("output", "");
  if (out.empty()) c.v->add("output", "required");
  return fs::path(out);
}

fs::path require_input(const Cfg& c) {
  const std::string in = c.gets("input", "");
  if (in.empty()) c.v->add("input", "required");
  return fs::path(in);
}

/// First train_days complete days of the set, or everything when
/// train_days <= 0 (the unset default).
SnapshotMatrix train_window(const SnapshotSet& set, int train_days) {
  if (train_days <= 0) return set.data;
  const auto want = static_cast<Eigen::Index>(train_days) *
                    set.meta.samples_per_day;
  if (want > set.data.cols()) {
    throw cli_validation_error(
        {"train_days"},
        "train_days requests " + std::to_string(want) +
            " columns but the input has " + std::to_string(set.data.cols()));
  }
  std::vector<double> t(set.data.time.times.begin(),
                        set.data.time.times.begin() + want);
  return SnapshotMatrix(set.data.values.leftCols(want), TimeGrid(std::move(t)));
}

/// Explicit rank if configured, else the data-kind default (25 for
/// concentrations, 50 for tendencies).
int resolve_rank(const Cfg& c, DataKind kind) {
  if (c.has("rank")) return c.geti("rank", 0);
  return kind == DataKind::CONC ? 25 : 50;
}

void check_rank_against(int r, const SnapshotMatrix& X) {
  const auto cap = std::min<Eigen::Index>(X.rows(), X.cols() - 1);
  if (r > cap) {
    throw cli_validation_error(
        {"rank"}, "rank " + std::to_string(r) + " exceeds min(n, m-1) = " +
                      std::to_string(cap) + " for the training window");
  }
}

std::vector<double> evenly_spaced_lons(int count) {
  std::vector<double> lons(count);
  for (int i = 0; i < count; ++i) lons[i] = -180.0 + 360.0 * i / count;
  return lons;
}

// ---------------------------------------------------------------------------
// synth

int run_synth(Cfg& c) {
  c.check_keys({"input", "output", "synth_kind", "n", "n_days",
                "samples_per_day", "eigs", "noise_sigma", "mode_seed",
                "amp_seed", "noise_seed", "lons_count", "day_fraction",
                "profile", "amplitude"});
  const fs::path out = require_output(c);
  const std::string kind = c.gets("synth_kind", "");
  if (kind != "mixture" && kind != "daynight") {
    c.v->add("synth_kind", "must be mixture or daynight");
  }
  const int spd = c.geti("samples_per_day", kind == "daynight" ? 72 : 24);
  const int n_days = c.geti("n_days", 1);
  const double noise_sigma = c.getd("noise_sigma", 0.0);
  if (spd < 1) c.v->add("samples_per_day", "must be >= 1");
  if (n_days < 1) c.v->add("n_days", "must be >= 1");
  if (noise_sigma < 0) c.v->add("noise_sigma", "must be >= 0");

  if (kind == "mixture") {
    MixtureSpec spec;
    spec.n = c.geti("n", 0);
    if (spec.n < 1) c.v->add("n", "must be >= 1");
    spec.eigs = c.get_eigs("eigs");
    spec.mode_seed = c.getu("mode_seed", 1);
    spec.amp_seed = c.getu("amp_seed", 2);
    spec.noise_seed = c.getu("noise_seed", 3);
    spec.noise_sigma = noise_sigma;
    if (!c.v->empty()) {
      return report_validation(c.v->fields, join_notes(c.v->notes));
    }
    spec.times = TimeGrid::uniform(0.0, 1.0 / spd,
                                   static_cast<Eigen::Index>(n_days) * spd);

    MixtureData mix = gen_exponential_mixture(spec);
    SnapshotSet set;
    set.meta.lons = evenly_spaced_lons(spec.n);
    set.meta.lats = {0.0};
    set.meta.levs = {0};
    set.meta.species = "synthetic";
    set.meta.kind = DataKind::CONC;
    set.meta.samples_per_day = spd;
    set.data = std::move(mix.data);

    fs::create_directories(out);
    save_snapshots(set, out / "data");
    save_model(mix.truth, EigConstraint::Unconstrained, true,
               out / "truth_model.json");
    return 0;
  }

  DayNightSpec spec;
  const int lons_count = c.geti("lons_count", 0);
  if (lons_count < 1) c.v->add("lons_count", "must be >= 1");
  spec.samples_per_day = spd;
  spec.n_days = n_days;
  spec.day_fraction = c.getd("day_fraction", 0.5);
  if (!(spec.day_fraction > 0 && spec.day_fraction < 1)) {
    c.v->add("day_fraction", "must lie in (0, 1)");
  }
  const std::string profile = c.gets("profile", "half_sine");
  if (profile == "half_sine") {
    spec.profile = DayNightSpec::Profile::HalfSine;
  } else if (profile == "square") {
    spec.profile = DayNightSpec::Profile::Square;
  } else {
    c.v->add("profile", "must be half_sine or square");
  }
  spec.amplitude = c.getd("amplitude", 1.0);
  if (!(spec.amplitude > 0)) c.v->add("amplitude", "must be > 0");
  const std::uint64_t noise_seed = c.getu("noise_seed", 3);
  if (!c.v->empty()) {
    return report_validation(c.v->fields, join_notes(c.v->notes));
  }
  spec.lons = evenly_spaced_lons(lons_count);

  SnapshotSet set = gen_traveling_daynight(spec);
  if (noise_sigma > 0) {
    // Same convention as the mixture generator: sigma scales the signal RMS,
    // entries perturbed in column-major order.
    Rng rng(noise_seed);
    const double rms =
        set.data.values.norm() / std::sqrt(double(set.data.values.size()));
    const double scale = noise_sigma * rms;
    for (Eigen::Index k = 0; k < set.data.cols(); ++k) {
      for (Eigen::Index i = 0; i < set.data.rows(); ++i) {
        set.data.values(i, k) += scale * rng.normal();
      }
    }
  }

  fs::create_directories(out);
  save_snapshots(set, out / "data");
  return 0;
}

// ---------------------------------------------------------------------------
// preprocess

int run_preprocess(Cfg& c) {
  c.check_keys({"input", "output", "isolate", "epsilon", "window_start",
                "window_end"});
  const fs::path in = require_input(c);
  const fs::path out = require_output(c);
  const std::string isolate = c.gets("isolate", "none");
  if (isolate != "none" && isolate != "threshold" && isolate != "window") {
    c.v->add("isolate", "must be none, threshold or window");
  }
  const double epsilon = c.getd("epsilon", 1e-3);
  if (isolate == "threshold" && !(epsilon > 0)) {
    c.v->add("epsilon", "must be > 0");
  }
  const int wstart = c.geti("window_start", 0);
  const int wend = c.geti("window_end", 0);
  if (!c.v->empty()) {
    return report_validation(c.v->fields, join_notes(c.v->notes));
  }

  SnapshotSet set = load_snapshots(in);
  const int spd = set.meta.samples_per_day;
  if (isolate == "window" &&
      !(0 <= wstart && wstart < wend && wend <= spd)) {
    throw cli_validation_error(
        {"window_start", "window_end"},
        "window must satisfy 0 <= start < end <= samples_per_day (" +
            std::to_string(spd) + ")");
  }

  const auto nlon = set.meta.lons.size();
  std::vector<double> row_lons(static_cast<std::size_t>(set.data.rows()));
  for (std::size_t i = 0; i < row_lons.size(); ++i) {
    row_lons[i] = set.meta.lons[i % nlon];
  }
  auto [shifted, plan] = shift_local_time(set.data, row_lons, spd);

  fs::create_directories(out);
  save_shift_plan(plan, out / "shift_plan.json");

  if (isolate != "none") {
    DaytimeMode mode = isolate == "threshold"
                           ? DaytimeMode::threshold(epsilon)
                           : DaytimeMode::window(wstart, wend, spd);
    auto [kept, mask] = isolate_daytime(shifted, mode);
    json mj{{"keep", mask.keep}};
    std::ofstream mf(out / "day_mask.json", std::ios::trunc);
    mf << mj.dump(2) << "\n";
    shifted = std::move(kept);
  }

  set.data = std::move(shifted);
  save_snapshots(set, out / "preprocessed");
  return 0;
}

// ---------------------------------------------------------------------------
// fit

int run_fit(Cfg& c) {
  c.check_keys(with_varpro({"input", "output", "rank", "constraint",
                            "train_days"}));
  const fs::path in = require_input(c);
  const fs::path out = require_output(c);
  const EigConstraint constraint = read_constraint(c);
  const VarProOptions opts = read_varpro_options(c);
  const int train_days = c.geti("train_days", 0);
  if (c.has("train_days") && train_days < 1) {
    c.v->add("train_days", "must be >= 1");
  }
  if (c.has("rank") && c.geti("rank", 0) < 1) {
    c.v->add("rank", "must be >= 1");
  }
  if (!c.v->empty()) {
    return report_validation(c.v->fields, join_notes(c.v->notes));
  }

  SnapshotSet set = load_snapshots(in);
  SnapshotMatrix train = train_window(set, train_days);
  const int r = resolve_rank(c, set.meta.kind);
  check_rank_against(r, train);

  FitResult fit = fit_optdmd(train, r, constraint, opts);
  fs::create_directories(out);
  save_model(fit.model, constraint, fit.info.converged, out / "model.json");

  const double train_err =
      relative_error(train, evaluate(fit.model, train.time));
  json summary{{"rank", r},
               {"constraint", to_string(constraint)},
               {"converged", fit.info.converged},
               {"iterations", fit.info.iterations},
               {"final_relative_residual", fit.info.final_relative_residual},
               {"constraint_active_count", fit.info.constraint_active_count},
               {"train_relative_error", train_err},
               {"train_columns", train.cols()},
               {"warnings", fit.model.warnings}};
  std::ofstream sf(out / "fit_summary.json", std::ios::trunc);
  sf << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// rank-scan

int run_rank_scan(Cfg& c) {
  c.check_keys(with_varpro({"input", "output", "ranks", "flat_tol",
                            "constraint", "train_days"}));
  const fs::path in = require_input(c);
  const fs::path out = require_output(c);
  const EigConstraint constraint = read_constraint(c);
  const VarProOptions opts = read_varpro_options(c);
  const int train_days = c.geti("train_days", 0);
  if (c.has("train_days") && train_days < 1) {
    c.v->add("train_days", "must be >= 1");
  }
  std::vector<int> ranks = c.get_int_list("ranks");
  if (c.has("ranks")) {
    if (ranks.empty()) {
      c.v->add("ranks", "must be a non-empty strictly increasing list");
    }
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      if (ranks[i] < 1 || (i > 0 && ranks[i] <= ranks[i - 1])) {
        c.v->add("ranks", "must be a non-empty strictly increasing list");
        break;
      }
    }
  }
  const double flat_tol = c.getd("flat_tol", 0.02);
  if (!(flat_tol > 0 && flat_tol < 1)) {
    c.v->add("flat_tol", "must lie in (0, 1)");
  }
  if (!c.v->empty()) {
    return report_validation(c.v->fields, join_notes(c.v->notes));
  }

  SnapshotSet set = load_snapshots(in);
  SnapshotMatrix train = train_window(set, train_days);
  if (ranks.empty()) {
    const auto cap =
        std::min<Eigen::Index>({50, train.rows(), train.cols() - 1});
    for (Eigen::Index r = 1; r <= cap; ++r) {
      ranks.push_back(static_cast<int>(r));
    }
  }
  if (!ranks.empty()) check_rank_against(ranks.back(), train);

  ErrorCurve curve = rank_scan(train, ranks, constraint, opts);
  RankChoice choice = select_rank(curve, flat_tol);

  fs::create_directories(out);
  write_error_curve_csv(curve, out / "error_curve.csv");
  json sel{{"rank", choice.rank},
           {"warning", choice.warning},
           {"flat_tol", flat_tol}};
  std::ofstream sf(out / "selected_rank.json", std::ios::trunc);
  sf << sel.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// forecast

int run_forecast(Cfg& c) {
  c.check_keys({"input", "output", "model", "forecast_days"});
  const fs::path in = require_input(c);
  const fs::path out = require_output(c);
  const std::string model_path = c.gets("model", "");
  if (model_path.empty()) c.v->add("model", "required");
  const int forecast_days = c.geti("forecast_days", 0);
  if (c.has("forecast_days") && forecast_days < 1) {
    c.v->add("forecast_days", "must be >= 1");
  }
  if (!c.v->empty()) {
    return report_validation(c.v->fields, join_notes(c.v->notes));
  }

  SnapshotSet set = load_snapshots(in);
  LoadedModel loaded = load_model(model_path);
  const int spd = set.meta.samples_per_day;
  const double t_cut = loaded.model.train_span.second + 1e-9;

  Eigen::Index first = 0;
  while (first < set.data.cols() && set.data.time.times[first] <= t_cut) {
    ++first;
  }
  const Eigen::Index avail = set.data.cols() - first;
  Eigen::Index take = 0;
  if (forecast_days > 0) {
    take = static_cast<Eigen::Index>(forecast_days) * spd;
    if (take > avail) {
      throw cli_validation_error(
          {"forecast_days"},
          "forecast_days requests " + std::to_string(take) +
              " columns beyond the training span but only " +
              std::to_string(avail) + " are available");
    }
  } else {
    take = (avail / spd) * spd;
    if (take == 0) {
      throw cli_validation_error(
          {"forecast_days"},
          "no complete day lies beyond the model's training span");
    }
  }

  std::vector<double> t(set.data.time.times.begin() + first,
                        set.data.time.times.begin() + first + take);
  TimeGrid grid(std::move(t));
  SnapshotMatrix truth(set.data.values.middleCols(first, take), grid);
  SnapshotMatrix hat = evaluate(loaded.model, grid);

  ForecastReport report = daily_error_report(truth, hat, spd);
  fs::create_directories(out);
  write_forecast_report_csv(report, out / "forecast_report.csv");
  return 0;
}

// ---------------------------------------------------------------------------
// bopdmd

void write_axis_histogram(const std::vector<double>& values,
                          const fs::path& csv_path, const char* axis,
                          json& fit_out) {
  const std::vector<double> trimmed = trimmed_sample(values, 10.0, 90.0);
  const int nbins = static_cast<int>(std::min<std::size_t>(20, trimmed.size()));
  try {
    Histogram hist = density_histogram(trimmed, nbins);
    GaussianFit fit = gaussian_fit_histogram(trimmed, nbins);
    write_histogram_csv(hist.centers, hist.density, csv_path);
    fit_out[axis] = {{"mu", fit.mu}, {"sigma", fit.sigma}, {"sse", fit.sse}};
  } catch (const validation_error&) {
    // Degenerate spread (e.g. a hard-constrained axis): keep the file
    // contract with an empty histogram and flag the fit as degenerate.
    write_histogram_csv({}, {}, csv_path);
    fit_out[axis] = {{"degenerate", true}};
  }
}

int run_bopdmd(Cfg& c) {
  c.check_keys(with_varpro({"input", "output", "rank", "constraint",
                            "train_days", "K", "p", "seed"}));
  const fs::path in = require_input(c);
  const fs::path out = require_output(c);
  const EigConstraint constraint = read_constraint(c);
  const VarProOptions opts = read_varpro_options(c);
  const int train_days = c.geti("train_days", 0);
  if (c.has("train_days") && train_days < 1) {
    c.v->add("train_days", "must be >= 1");
  }
  if (c.has("rank") && c.geti("rank", 0) < 1) {
    c.v->add("rank", "must be >= 1");
  }
  BagSpec spec;
  spec.K = c.geti("K", spec.K);
  spec.p = c.geti("p", spec.p);
  spec.seed = c.getu("seed", spec.seed);
  if (spec.K < 2) c.v->add("K", "must be >= 2");
  if (spec.p < 2) c.v->add("p", "must be >= 2");
  if (!c.v->empty()) {
    return report_validation(c.v->fields, join_notes(c.v->notes));
  }

  SnapshotSet set = load_snapshots(in);
  SnapshotMatrix train = train_window(set, train_days);
  const int r = resolve_rank(c, set.meta.kind);
  check_rank_against(r, train);
  if (spec.p >= train.cols()) {
    throw cli_validation_error(
        {"p"}, "p must be smaller than the " + std::to_string(train.cols()) +
                   " training columns");
  }

  Ensemble ensemble = fit_ensemble(train, r, constraint, spec, opts);
  EnsembleStats stats = ensemble_stats(ensemble);

  fs::create_directories(out);
  save_ensemble_stats(stats, out / "ensemble_stats.json");
  write_trial_eigs_csv(ensemble, out / "trial_eigs.csv");

  Eigen::Index dominant = 0;
  stats.mean_amps.cwiseAbs().maxCoeff(&dominant);
  std::vector<double> re_vals;
  std::vector<double> im_vals;
  for (const auto& trial : ensemble.trials) {
    if (!trial.converged) continue;
    re_vals.push_back(trial.model.eigs(dominant).real());
    im_vals.push_back(trial.model.eigs(dominant).imag());
  }

  json fits{{"mode_index", dominant}};
  write_axis_histogram(re_vals, out / "eig_hist_re.csv", "re", fits);
  write_axis_histogram(im_vals, out / "eig_hist_im.csv", "im", fits);
  std::ofstream ff(out / "gaussian_fit.json", std::ios::trunc);
  ff << fits.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct FlagValues {
  std::string config;
  std::string input;
  std::string output;
  std::string constraint;
  int rank = 0;
  int train_days = 0;
  int forecast_days = 0;
  int K = 0;
  int p = 0;
  std::uint64_t seed = 0;
};

void add_common_options(CLI::App* sub, FlagValues& f) {
  sub->add_option("--config", f.config, "JSON config file");
  sub->add_option("--rank", f.rank, "model rank");
  sub->add_option("--constraint", f.constraint,
                  "eigenvalue constraint: lhp, imag or none");
  sub->add_option("--train-days", f.train_days, "training days");
  sub->add_option("--forecast-days", f.forecast_days, "forecast days");
  sub->add_option("--K", f.K, "ensemble trials");
  sub->add_option("--p", f.p, "snapshots per bag");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--input", f.input, "input snapshot stem (.f64/.json pair)");
  sub->add_option("--output", f.output, "output directory");
}

json flag_overrides(const CLI::App* sub, const FlagValues& f) {
  json j = json::object();
  if (sub->count("--input")) j["input"] = f.input;
  if (sub->count("--output")) j["output"] = f.output;
  if (sub->count("--rank")) j["rank"] = f.rank;
  if (sub->count("--constraint")) j["constraint"] = f.constraint;
  if (sub->count("--train-days")) j["train_days"] = f.train_days;
  if (sub->count("--forecast-days")) j["forecast_days"] = f.forecast_days;
  if (sub->count("--K")) j["K"] = f.K;
  if (sub->count("--p")) j["p"] = f.p;
  if (sub->count("--seed")) j["seed"] = f.seed;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimized dynamic mode decomposition toolkit"};
  app.require_subcommand(1);

  FlagValues f;
  CLI::App* synth = app.add_subcommand("synth", "generate synthetic data");
  CLI::App* preprocess =
      app.add_subcommand("preprocess", "local-time shift and day isolation");
  CLI::App* fit = app.add_subcommand("fit", "optimized-DMD fit");
  CLI::App* rank_scan =
      app.add_subcommand("rank-scan", "error-vs-rank scan and elbow pick");
  CLI::App* forecast =
      app.add_subcommand("forecast", "daily forecast error report");
  CLI::App* bopdmd =
      app.add_subcommand("bopdmd", "bagging-ensemble optimized DMD");
  for (CLI::App* sub : {synth, preprocess, fit, rank_scan, forecast, bopdmd}) {
    add_common_options(sub, f);
  }

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();

  Violations violations;
  Cfg cfg;
  cfg.v = &violations;
  cfg.flags = flag_overrides(sub, f);
  cfg.file = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) {
      return report_runtime("cannot open config: " + f.config);
    }
    try {
      in >> cfg.file;
    } catch (const json::exception& e) {
      return report_runtime("config parse error: " + std::string(e.what()));
    }
    if (!cfg.file.is_object()) {
      return report_validation({"config"}, "config must be a JSON object");
    }
  }

  try {
    if (sub == synth) return run_synth(cfg);
    if (sub == preprocess) return run_preprocess(cfg);
    if (sub == fit) return run_fit(cfg);
    if (sub == rank_scan) return run_rank_scan(cfg);
    if (sub == forecast) return run_forecast(cfg);
    return run_bopdmd(cfg);
  } catch (const cli_validation_error& e) {
    return report_validation(e.fields, e.what());
  } catch (const validation_error& e) {
    return report_validation({}, e.what());
  } catch (const std::exception& e) {
    return report_runtime(e.what());
  }
}
