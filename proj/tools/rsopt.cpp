// SPDX-License-Identifier: Apache-2.0
//
// rsopt: fit second-order multiresponse surface models, locate the
// weighted-sum optimum over a spherical region, quantify its sampling
// uncertainty, and validate the asymptotics by simulation.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rsm/asymptotics.hpp"
#include "rsm/basis.hpp"
#include "rsm/config.hpp"
#include "rsm/csv.hpp"
#include "rsm/design.hpp"
#include "rsm/errors.hpp"
#include "rsm/montecarlo.hpp"
#include "rsm/regression.hpp"
#include "rsm/report.hpp"
#include "rsm/scalarize.hpp"
#include "rsm/sensitivity.hpp"
#include "rsm/solver.hpp"

namespace {

// Exit codes are a stable contract:
//   0 success, 2 input/config error, 3 rank deficient, 4 non-unique
//   minimizer, 5 degenerate complementarity, 6 simulation setup failure.
enum ExitCode {
  kOk = 0,
  kInternal = 1,
  kInputError = 2,
  kRankDeficient = 3,
  kNonUnique = 4,
  kDegenerate = 5,
  kSimulationSetup = 6,
};

int log_level() {
  const char* env = std::getenv("RSM_LOG");
  if (!env) return 1;
  const std::string v(env);
  if (v == "debug") return 2;
  if (v == "quiet" || v == "error") return 0;
  return 1;
}

void log_debug(const std::string& message) {
  if (log_level() >= 2) std::cerr << "rsopt: " << message << "\n";
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw rsm::ParseError("cannot open output file '" + output_path + "'");
  out << text;
}

// Values resolved from config file and flags; flags win.
struct Options {
  std::string config_path;
  std::string input_path;
  std::string output_path;
  std::string weights_text;
  std::optional<double> radius;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  int threads = 0;

  rsm::KeyValueConfig file;

  void load_file() {
    if (!config_path.empty()) file = rsm::KeyValueConfig::parse_file(config_path);
  }

  std::string resolve_input() const {
    if (!input_path.empty()) return input_path;
    if (file.has("input_path")) return file.get_string("input_path");
    throw rsm::ParseError("no input CSV given (--input or config input_path)");
  }
  std::string resolve_output() const {
    if (!output_path.empty()) return output_path;
    if (file.has("output_path")) return file.get_string("output_path");
    return "";
  }
  rsm::WeightVector resolve_weights() const {
    std::vector<double> values;
    if (!weights_text.empty())
      values = rsm::parse_number_list(weights_text, "--weights");
    else if (file.has("weights"))
      values = file.get_number_list("weights");
    else
      throw rsm::ParseError("no weights given (--weights or config weights)");
    return rsm::WeightVector(Eigen::Map<rsm::Vector>(values.data(), values.size()));
  }
  double resolve_radius() const {
    if (radius) return *radius;
    if (file.has("radius")) return file.get_number("radius");
    throw rsm::ParseError("no region radius given (--radius or config radius)");
  }
  double resolve_alpha() const {
    if (alpha) return *alpha;
    if (file.has("alpha")) return file.get_number("alpha");
    return 0.05;
  }
  std::uint64_t resolve_seed() const {
    if (seed) return *seed;
    if (file.has("seed")) return file.get_unsigned("seed");
    return 0;  // fixed default, never wall clock
  }
  int resolve_replicates() const {
    if (replicates) return *replicates;
    if (file.has("replicates")) return static_cast<int>(file.get_integer("replicates"));
    throw rsm::ParseError("no replicate count given (--replicates or config replicates)");
  }
};

void add_common_flags(CLI::App* cmd, Options& opt, bool with_stats) {
  cmd->add_option("--config", opt.config_path, "flat key=value config file");
  cmd->add_option("--input", opt.input_path, "input CSV (header x1..xn,y1..yr)");
  cmd->add_option("--output", opt.output_path, "output path (default stdout)");
  cmd->add_option("--weights", opt.weights_text, "response weights w1,..,wr (sum to 1)");
  cmd->add_option("--radius", opt.radius, "region radius c (coded units)");
  if (with_stats) {
    cmd->add_option("--alpha", opt.alpha, "confidence level complement (default 0.05)");
    cmd->add_option("--seed", opt.seed, "root RNG seed (default 0)");
    cmd->add_option("--replicates", opt.replicates, "Monte Carlo replicates");
  }
}

struct Pipeline {
  rsm::Design design;
  rsm::FitResult fit;
};

Pipeline fit_from_csv(const Options& opt) {
  const std::string path = opt.resolve_input();
  log_debug("reading " + path);
  const rsm::Dataset data = rsm::read_dataset_csv_file(path);
  Pipeline p{rsm::build_design(data.points), {}};
  p.fit = rsm::fit(p.design, data.y);
  return p;
}

int cmd_fit(Options& opt) {
  opt.load_file();
  const Pipeline p = fit_from_csv(opt);
  emit(rsm::fit_report(p.design, p.fit), opt.resolve_output());
  return kOk;
}

int cmd_optimize(Options& opt) {
  opt.load_file();
  const Pipeline p = fit_from_csv(opt);
  const rsm::WeightVector w = opt.resolve_weights();
  const rsm::SphereRegion region(opt.resolve_radius());
  const rsm::QuadraticObjective obj = rsm::weighted_objective(w, p.fit.coefficients);
  const rsm::KktPoint point = rsm::solve_sphere(obj, region);
  emit(rsm::optimize_report(w, region, p.fit.coefficients, point,
                            rsm::evaluate_functional(obj, point.x_star),
                            rsm::predict(p.fit.coefficients, point.x_star)),
       opt.resolve_output());
  return kOk;
}

int cmd_analyze(Options& opt) {
  opt.load_file();
  const Pipeline p = fit_from_csv(opt);
  const rsm::WeightVector w = opt.resolve_weights();
  const rsm::SphereRegion region(opt.resolve_radius());
  const double alpha = opt.resolve_alpha();

  const rsm::QuadraticObjective obj = rsm::weighted_objective(w, p.fit.coefficients);
  const rsm::KktPoint point = rsm::solve_sphere(obj, region);
  const rsm::LagrangianBlocks blocks = rsm::lagrangian_blocks(obj, w, point);
  const rsm::SensitivityJacobian jac = rsm::solution_jacobian(blocks, point.active);
  const rsm::CoefficientCovariance theta = rsm::coefficient_covariance(p.fit, p.fit.runs);

  rsm::AsymptoticReport report = rsm::critical_point_covariance(jac, theta);
  report.alpha = alpha;
  report.intervals = rsm::confidence_intervals(point.x_star, report, alpha);
  try {
    report.ellipsoid = rsm::confidence_ellipsoid(point.x_star, report, alpha);
    report.has_ellipsoid = true;
  } catch (const rsm::SingularCovariance&) {
    // active-boundary Xi is rank deficient along x*; intervals still stand
    report.has_ellipsoid = false;
  }
  emit(rsm::analyze_report(w, region, point, jac, report, alpha), opt.resolve_output());
  return kOk;
}

rsm::SimulationConfig simulation_config_from(Options& opt) {
  const rsm::KeyValueConfig& file = opt.file;
  const int n = static_cast<int>(file.get_integer("truth_n"));
  const int r = static_cast<int>(file.get_integer("truth_r"));
  if (n < 1 || r < 1) throw rsm::ParseError("config: truth_n and truth_r must be >= 1");
  const int p = rsm::basis_size(n);

  const std::vector<double> b_values = file.get_number_list("truth_b");
  if (static_cast<int>(b_values.size()) != p * r)
    throw rsm::ParseError("config: truth_b needs " + std::to_string(p * r) +
                          " column-stacked values, got " + std::to_string(b_values.size()));
  rsm::Matrix b(p, r);
  for (int k = 0; k < r; ++k)
    for (int j = 0; j < p; ++j) b(j, k) = b_values[static_cast<std::size_t>(k) * p + j];

  const std::vector<double> s_values = file.get_number_list("sigma");
  if (static_cast<int>(s_values.size()) != r * r)
    throw rsm::ParseError("config: sigma needs " + std::to_string(r * r) +
                          " row-major values, got " + std::to_string(s_values.size()));
  rsm::Matrix sigma(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) sigma(i, j) = s_values[static_cast<std::size_t>(i) * r + j];

  const double axial = file.has("design_axial") ? file.get_number("design_axial") : std::sqrt(2.0);
  const int center = file.has("design_center") ? static_cast<int>(file.get_integer("design_center")) : 1;
  const int reps = file.has("design_replicates")
                       ? static_cast<int>(file.get_integer("design_replicates"))
                       : 1;
  rsm::Design design = rsm::build_design(rsm::ccd_design(n, axial, center));
  if (reps > 1) design = rsm::replicate_design(design, reps);

  rsm::SimulationConfig config;
  config.truth = rsm::CoefficientMatrix(std::move(b), n);
  config.sigma = std::move(sigma);
  config.design = std::move(design);
  config.weights = opt.resolve_weights();
  config.region = rsm::SphereRegion(opt.resolve_radius());
  config.replicates = opt.resolve_replicates();
  config.seed = opt.resolve_seed();
  config.alpha = opt.resolve_alpha();
  config.threads = opt.threads;
  return config;
}

int cmd_simulate(Options& opt) {
  opt.load_file();
  const rsm::SimulationConfig config = simulation_config_from(opt);
  log_debug("running " + std::to_string(config.replicates) + " replicates");
  const rsm::SimulationResult result = rsm::run_simulation(config);

  std::optional<rsm::ComparisonRecord> comparison;
  try {
    comparison = rsm::empirical_vs_asymptotic(result);
  } catch (const rsm::TooFewReplicates&) {
    comparison = std::nullopt;
  }
  emit(rsm::simulate_report(config, result, comparison), opt.resolve_output());
  if (result.excessive_failures()) {
    std::cerr << "rsopt: " << result.failures.count << " of " << result.replicates
              << " replicates failed (rate above 1%)\n";
    return kSimulationSetup;
  }
  return kOk;
}

int cmd_design(int n, double axial, int center, const std::string& output_path) {
  const auto points = rsm::ccd_design(n, axial, center);
  std::ostringstream out;
  rsm::write_design_csv(out, points);
  emit(out.str(), output_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiresponse surface optimization and sensitivity analysis"};
  app.require_subcommand(1);

  Options opt;
  int design_n = 0;
  double design_axial = std::sqrt(2.0);
  int design_center = 1;
  std::string design_output;

  CLI::App* fit = app.add_subcommand("fit", "least-squares fit of a second-order model");
  add_common_flags(fit, opt, false);

  CLI::App* optimize =
      app.add_subcommand("optimize", "scalarized optimum over the spherical region");
  add_common_flags(optimize, opt, false);

  CLI::App* analyze =
      app.add_subcommand("analyze", "sensitivity Jacobian and confidence regions for x*");
  add_common_flags(analyze, opt, true);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo check of the asymptotic law");
  add_common_flags(simulate, opt, true);
  simulate->add_option("--threads", opt.threads, "worker threads (0 = hardware)");

  CLI::App* design = app.add_subcommand("design", "emit a central composite design as CSV");
  design->add_option("--factors,-n", design_n, "number of factors")->required();
  design->add_option("--axial", design_axial, "axial distance (default sqrt(2))");
  design->add_option("--center", design_center, "center points (default 1)");
  design->add_option("--output", design_output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (fit->parsed()) return cmd_fit(opt);
    if (optimize->parsed()) return cmd_optimize(opt);
    if (analyze->parsed()) return cmd_analyze(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (design->parsed()) return cmd_design(design_n, design_axial, design_center, design_output);
  } catch (const rsm::RankDeficient& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kRankDeficient;
  } catch (const rsm::NonUniqueMinimizer& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kNonUnique;
  } catch (const rsm::DegenerateComplementarity& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kDegenerate;
  } catch (const rsm::NotPositiveDefinite& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kDegenerate;
  } catch (const rsm::TruthDegenerate& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kSimulationSetup;
  } catch (const rsm::ParseError& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInputError;
  } catch (const rsm::InvalidWeights& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInputError;
  } catch (const rsm::InvalidAlpha& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInputError;
  } catch (const rsm::InvalidArgument& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInputError;
  } catch (const rsm::DimensionMismatch& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInputError;
  } catch (const rsm::InsufficientDof& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInputError;
  } catch (const rsm::EmptyInput& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInputError;
  } catch (const rsm::Error& e) {
    std::cerr << "rsopt: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "rsopt: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
