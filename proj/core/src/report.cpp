// SPDX-License-Identifier: Apache-2.0
#include "rsm/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include <json.hpp>

namespace rsm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json to_array(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json to_array(const RowVector& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json to_array(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_json(std::string& out, const ordered_json& value, int indent);

void write_number(std::string& out, double value) {
  if (!std::isfinite(value)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out += buf;
  // bare integers like "4" are still valid JSON numbers; nothing to fix up
}

void write_string(std::string& out, const std::string& s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void write_json(std::string& out, const ordered_json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (value.type()) {
    case ordered_json::value_t::null: out += "null"; break;
    case ordered_json::value_t::boolean: out += value.get<bool>() ? "true" : "false"; break;
    case ordered_json::value_t::number_integer:
      out += std::to_string(value.get<long long>());
      break;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(value.get<unsigned long long>());
      break;
    case ordered_json::value_t::number_float: write_number(out, value.get<double>()); break;
    case ordered_json::value_t::string: write_string(out, value.get<std::string>()); break;
    case ordered_json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        break;
      }
      // keep rows of numbers on one line for readable matrices
      bool scalars_only = true;
      for (const auto& item : value)
        if (item.is_structured()) scalars_only = false;
      out += '[';
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += scalars_only ? ", " : ",";
        if (!scalars_only) {
          out += '\n';
          out += pad_in;
        }
        write_json(out, item, indent + 1);
        first = false;
      }
      if (!scalars_only) {
        out += '\n';
        out += pad;
      }
      out += ']';
      break;
    }
    case ordered_json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        break;
      }
      out += '{';
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ',';
        out += '\n';
        out += pad_in;
        write_string(out, it.key());
        out += ": ";
        write_json(out, it.value(), indent + 1);
        first = false;
      }
      out += '\n';
      out += pad;
      out += '}';
      break;
    }
    default: out += "null";
  }
}

std::string render(const ordered_json& doc) {
  std::string out;
  write_json(out, doc, 0);
  out += '\n';
  return out;
}

ordered_json residuals_json(const KktResiduals& res) {
  return ordered_json{{"stationarity", res.stationarity},
                      {"feasibility", res.feasibility},
                      {"complementarity", res.complementarity},
                      {"strict_margin", res.strict_margin}};
}

ordered_json mardia_json(const std::optional<MardiaStatistics>& mardia) {
  if (!mardia) return nullptr;
  return ordered_json{{"skewness", mardia->skewness},
                      {"skewness_dof", mardia->skewness_dof},
                      {"kurtosis", mardia->kurtosis},
                      {"kurtosis_mean", mardia->kurtosis_mean},
                      {"kurtosis_stddev", mardia->kurtosis_stddev}};
}

}  // namespace

std::string fit_report(const Design& design, const FitResult& fit) {
  const CoefficientMatrix& b = fit.coefficients;
  ordered_json doc;
  doc["schema"] = "rsopt/fit/v1";
  doc["timestamp"] = utc_timestamp();
  doc["n"] = design.n;
  doc["r"] = b.r();
  doc["runs"] = fit.runs;
  doc["p"] = design.p;
  doc["dof"] = fit.dof;
  doc["rank"] = ordered_json{{"sv_min", design.sv_min},
                             {"sv_max", design.sv_max},
                             {"ratio", design.sv_min / design.sv_max}};

  ordered_json vec = ordered_json::array();
  for (int k = 0; k < b.r(); ++k)
    for (int j = 0; j < b.p(); ++j) vec.push_back(b.B(j, k));
  ordered_json per_response = ordered_json::array();
  for (int k = 0; k < b.r(); ++k) {
    const ResponseSurfaceTerms terms = split_coefficients(b, k);
    per_response.push_back(ordered_json{{"intercept", terms.intercept},
                                        {"linear", to_array(terms.linear)},
                                        {"quadratic", to_array(terms.quadratic)}});
  }
  doc["coefficients"] =
      ordered_json{{"ordering", "column_stacked"}, {"vec", std::move(vec)},
                   {"per_response", std::move(per_response)}};
  doc["sigma_hat"] = fit.sigma_hat ? to_array(*fit.sigma_hat) : ordered_json(nullptr);
  return render(doc);
}

std::string optimize_report(const WeightVector& weights, const SphereRegion& region,
                            const CoefficientMatrix& coefficients, const KktPoint& point,
                            double objective_value, const Vector& predicted_response) {
  (void)coefficients;
  ordered_json doc;
  doc["schema"] = "rsopt/optimize/v1";
  doc["timestamp"] = utc_timestamp();
  doc["weights"] = to_array(weights.w);
  doc["radius"] = region.radius;
  doc["x_star"] = to_array(point.x_star);
  doc["lambda_star"] = point.lambda_star;
  doc["active"] = point.active;
  doc["objective_value"] = objective_value;
  doc["predicted_response"] = to_array(predicted_response);
  doc["residuals"] = residuals_json(point.residuals);
  return render(doc);
}

std::string analyze_report(const WeightVector& weights, const SphereRegion& region,
                           const KktPoint& point, const SensitivityJacobian& jacobian,
                           const AsymptoticReport& asymptotics, double alpha) {
  ordered_json doc;
  doc["schema"] = "rsopt/analyze/v1";
  doc["timestamp"] = utc_timestamp();
  doc["weights"] = to_array(weights.w);
  doc["radius"] = region.radius;
  doc["alpha"] = alpha;
  doc["x_star"] = to_array(point.x_star);
  doc["lambda_star"] = point.lambda_star;
  doc["active"] = point.active;
  doc["jacobian"] = ordered_json{{"ordering", "column_stacked"},
                                 {"d_xstar_dvecb", to_array(jacobian.J_x)},
                                 {"d_lambda_dvecb", to_array(jacobian.J_lambda)}};
  doc["xi"] = to_array(asymptotics.xi);
  doc["cov_xstar"] = to_array(asymptotics.cov_xstar);
  ordered_json intervals = ordered_json::array();
  for (const auto& [lo, hi] : asymptotics.intervals)
    intervals.push_back(ordered_json{{"lower", lo}, {"upper", hi}});
  doc["intervals"] = std::move(intervals);
  if (asymptotics.has_ellipsoid) {
    doc["ellipsoid"] = ordered_json{{"center", to_array(asymptotics.ellipsoid.center)},
                                    {"precision", to_array(asymptotics.ellipsoid.precision)},
                                    {"threshold", asymptotics.ellipsoid.threshold},
                                    {"alpha", asymptotics.ellipsoid.alpha}};
  } else {
    doc["ellipsoid"] = nullptr;
  }
  // tangency x*' J_x, ~0 on active instances (differentiated constraint)
  if (point.active) {
    doc["tangency"] =
        (point.x_star.transpose() * jacobian.J_x).lpNorm<Eigen::Infinity>();
  } else {
    doc["tangency"] = nullptr;
  }
  return render(doc);
}

std::string simulate_report(const SimulationConfig& config, const SimulationResult& result,
                            const std::optional<ComparisonRecord>& comparison) {
  ordered_json doc;
  doc["schema"] = "rsopt/simulate/v1";
  doc["timestamp"] = utc_timestamp();
  doc["config"] = ordered_json{{"n", config.design.n},
                               {"r", config.truth.r()},
                               {"runs", config.design.runs()},
                               {"weights", to_array(config.weights.w)},
                               {"radius", config.region.radius},
                               {"alpha", config.alpha},
                               {"seed", config.seed},
                               {"replicates", config.replicates}};
  doc["x_star_truth"] = to_array(result.x_star_truth);
  doc["xi_reference"] = to_array(result.xi_reference);
  doc["successes"] = result.successes();
  ordered_json reasons = ordered_json::object();
  for (const auto& [reason, count] : result.failures.reasons) reasons[reason] = count;
  doc["failures"] = ordered_json{{"count", result.failures.count}, {"reasons", std::move(reasons)}};
  doc["failure_rate"] = result.failure_rate();
  doc["empirical_cov"] = to_array(result.empirical_cov);
  doc["coverage"] = to_array(result.coverage);
  doc["coverage_plugin"] = to_array(result.coverage_plugin);
  if (comparison) {
    doc["comparison"] = ordered_json{{"frobenius_rel_error", comparison->frobenius_rel_error},
                                     {"coverage", to_array(comparison->coverage)},
                                     {"coverage_plugin", to_array(comparison->coverage_plugin)},
                                     {"mardia", mardia_json(comparison->mardia)},
                                     {"successes", comparison->successes},
                                     {"failures", comparison->failures}};
  } else {
    doc["comparison"] = nullptr;
  }
  return render(doc);
}

}  // namespace rsm
