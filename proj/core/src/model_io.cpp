#include "specdmd/model_io.hpp"

#include <charconv>
#include <fstream>

#include "json.hpp"

namespace specdmd {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json complex_pair(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

std::complex<double> pair_to_complex(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json complex_vector(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_pair(v(i)));
  return out;
}

Eigen::VectorXcd json_to_complex_vector(const json& j) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = pair_to_complex(j.at(i));
  }
  return v;
}

json real_vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json complex_matrix_rows(const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_pair(m(i, j)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

json real_matrix_rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXcd json_to_complex_matrix(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols =
      rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : Eigen::Index{0};
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw io_error("model JSON: ragged modes matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = pair_to_complex(row.at(static_cast<std::size_t>(c)));
    }
  }
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw io_error("cannot open for writing: " + path.string());
  }
  out << text;
  if (!out) {
    throw io_error("write failed: " + path.string());
  }
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw io_error("cannot open: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw io_error("corrupt JSON " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

std::string to_string(EigConstraint c) {
  switch (c) {
    case EigConstraint::LeftHalfPlane:
      return "lhp";
    case EigConstraint::ImaginaryAxis:
      return "imag";
    case EigConstraint::Unconstrained:
      break;
  }
  return "none";
}

EigConstraint constraint_from_string(const std::string& s) {
  if (s == "lhp") return EigConstraint::LeftHalfPlane;
  if (s == "imag") return EigConstraint::ImaginaryAxis;
  if (s == "none") return EigConstraint::Unconstrained;
  throw validation_error("unknown constraint: " + s +
                         " (expected lhp, imag or none)");
}

void save_model(const DmdModel& model, EigConstraint c, bool converged,
                const std::filesystem::path& path) {
  json j;
  j["rank"] = model.rank;
  j["eigs"] = complex_vector(model.eigs);
  j["amps"] = complex_vector(model.amps);
  j["modes"] = complex_matrix_rows(model.modes);
  j["train_span"] = json::array({model.train_span.first,
                                 model.train_span.second});
  j["constraint"] = to_string(c);
  j["converged"] = converged;
  if (!model.warnings.empty()) {
    j["warnings"] = model.warnings;
  }
  write_text(path, j.dump(2) + "\n");
}

LoadedModel load_model(const std::filesystem::path& path) {
  const json j = read_json(path);
  LoadedModel out;
  try {
    out.model.rank = j.at("rank").get<int>();
    out.model.eigs = json_to_complex_vector(j.at("eigs"));
    out.model.amps = json_to_complex_vector(j.at("amps"));
    out.model.modes = json_to_complex_matrix(j.at("modes"));
    out.model.train_span = {j.at("train_span").at(0).get<double>(),
                            j.at("train_span").at(1).get<double>()};
    out.constraint = constraint_from_string(j.at("constraint").get<std::string>());
    out.converged = j.at("converged").get<bool>();
    if (j.contains("warnings")) {
      out.model.warnings = j.at("warnings").get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw io_error("corrupt model JSON " + path.string() + ": " + e.what());
  }
  if (out.model.eigs.size() != out.model.rank ||
      out.model.amps.size() != out.model.rank ||
      out.model.modes.cols() != out.model.rank) {
    throw validation_error("model JSON: inconsistent rank");
  }
  return out;
}

void save_shift_plan(const ShiftPlan& plan,
                     const std::filesystem::path& path) {
  json j;
  j["shifts"] = plan.shifts;
  j["samples_per_day"] = plan.samples_per_day;
  write_text(path, j.dump(2) + "\n");
}

ShiftPlan load_shift_plan(const std::filesystem::path& path) {
  const json j = read_json(path);
  ShiftPlan plan;
  try {
    plan.shifts = j.at("shifts").get<std::vector<int>>();
    plan.samples_per_day = j.at("samples_per_day").get<int>();
  } catch (const json::exception& e) {
    throw io_error("corrupt shift plan " + path.string() + ": " + e.what());
  }
  return plan;
}

void save_ensemble_stats(const EnsembleStats& stats,
                         const std::filesystem::path& path) {
  json j;
  j["mean_eigs"] = complex_vector(stats.mean_eigs);
  j["var_eigs"] = real_vector(stats.var_eigs);
  j["mean_amps"] = complex_vector(stats.mean_amps);
  j["var_amps"] = real_vector(stats.var_amps);
  j["mean_modes"] = complex_matrix_rows(stats.mean_modes);
  j["var_modes"] = real_matrix_rows(stats.var_modes);
  j["converged_trials"] = stats.converged_trials;
  j["total_trials"] = stats.total_trials;
  write_text(path, j.dump(2) + "\n");
}

void write_trial_eigs_csv(const Ensemble& e,
                          const std::filesystem::path& path) {
  std::string text = "trial,j,re,im,converged\n";
  for (std::size_t k = 0; k < e.trials.size(); ++k) {
    const auto& trial = e.trials[k];
    const Eigen::Index r = trial.model.eigs.size();
    for (Eigen::Index j = 0; j < r; ++j) {
      text += std::to_string(k) + "," + std::to_string(j) + "," +
              fmt(trial.model.eigs(j).real()) + "," +
              fmt(trial.model.eigs(j).imag()) + "," +
              (trial.converged ? "1" : "0") + "\n";
    }
  }
  write_text(path, text);
}

void write_error_curve_csv(const ErrorCurve& curve,
                           const std::filesystem::path& path) {
  std::string text = "rank,rel_error,converged\n";
  for (std::size_t i = 0; i < curve.ranks.size(); ++i) {
    text += std::to_string(curve.ranks[i]) + "," + fmt(curve.rel_errors[i]) +
            "," + (curve.converged_flags[i] ? "1" : "0") + "\n";
  }
  write_text(path, text);
}

void write_forecast_report_csv(const ForecastReport& report,
                               const std::filesystem::path& path) {
  std::string text = "day,mean_rel_err,lo95,hi95\n";
  for (std::size_t d = 0; d < report.day_index.size(); ++d) {
    text += std::to_string(report.day_index[d]) + "," +
            fmt(report.mean_rel_err[d]) + "," + fmt(report.lo95[d]) + "," +
            fmt(report.hi95[d]) + "\n";
  }
  write_text(path, text);
}

void write_histogram_csv(const std::vector<double>& centers,
                         const std::vector<double>& densities,
                         const std::filesystem::path& path) {
  if (centers.size() != densities.size()) {
    throw validation_error("write_histogram_csv: length mismatch");
  }
  std::string text = "bin_center,density\n";
  for (std::size_t b = 0; b < centers.size(); ++b) {
    text += fmt(centers[b]) + "," + fmt(densities[b]) + "\n";
  }
  write_text(path, text);
}

}  // namespace specdmd
