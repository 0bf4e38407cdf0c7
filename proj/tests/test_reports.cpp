// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rsm/asymptotics.hpp"
#include "rsm/config.hpp"
#include "rsm/csv.hpp"
#include "rsm/errors.hpp"
#include "rsm/montecarlo.hpp"
#include "rsm/report.hpp"
#include "rsm/scalarize.hpp"
#include "rsm/sensitivity.hpp"
#include "rsm/solver.hpp"
#include "support/schema_check.hpp"

using nlohmann::json;
using rsm::Matrix;
using rsm::Vector;

namespace {

json load_schema(const std::string& name) {
  const std::string path = std::string(RSMOPT_SOURCE_DIR) + "/schemas/" + name;
  std::ifstream in(path);
  REQUIRE(in.good());
  return json::parse(in);
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out << line << "\n";
  return out.str();
}

}  // namespace

TEST_SUITE("reports") {

TEST_CASE("csv round trip and parse errors") {
  std::istringstream good("x1,x2,y1\n-1,0.5,2.25\n0.1,0.2,0.3\n1,1,1\n");
  const auto data = rsm::read_dataset_csv(good);
  CHECK(data.n == 2);
  CHECK(data.r == 1);
  CHECK(data.points.size() == 3);
  CHECK(data.y(0, 0) == 2.25);
  CHECK(data.points[0](0) == -1.0);

  std::istringstream bad_cell("x1,y1\n0.5,1.0\noops,2.0\n");
  try {
    rsm::read_dataset_csv(bad_cell);
    FAIL("expected ParseError");
  } catch (const rsm::ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::istringstream bad_header("a,b\n1,2\n");
  CHECK_THROWS_AS(rsm::read_dataset_csv(bad_header), rsm::ParseError);
  std::istringstream short_row("x1,y1\n1.0\n");
  CHECK_THROWS_AS(rsm::read_dataset_csv(short_row), rsm::ParseError);

  // 17-digit design serialization reparses bit-exactly
  std::vector<Vector> pts;
  Vector p1(2), p2(2);
  p1 << M_PI, -std::sqrt(2.0);
  p2 << 1.0 / 3.0, 1e-17;
  pts = {p1, p2};
  std::ostringstream out;
  rsm::write_design_csv(out, pts);
  // append a dummy response column so the dataset reader accepts it
  std::string text = out.str();
  std::string patched = "x1,x2,y1\n";
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // drop original header
  while (std::getline(lines, line)) patched += line + ",0\n";
  std::istringstream pin(patched);
  const auto reparsed = rsm::read_dataset_csv(pin);
  CHECK(reparsed.points[0](0) == M_PI);
  CHECK(reparsed.points[0](1) == -std::sqrt(2.0));
  CHECK(reparsed.points[1](0) == 1.0 / 3.0);
  CHECK(reparsed.points[1](1) == 1e-17);
}

TEST_CASE("key-value config") {
  std::istringstream in(
      "# demo\n"
      "radius = 1.5\n"
      "weights = 0.25, 0.75\n"
      "seed = 42  # inline comment\n"
      "label = free text\n");
  const auto config = rsm::KeyValueConfig::parse(in);
  CHECK(config.get_number("radius") == 1.5);
  CHECK(config.get_number_list("weights") == std::vector<double>{0.25, 0.75});
  CHECK(config.get_unsigned("seed") == 42);
  CHECK(config.get_string("label") == "free text");
  CHECK(!config.has("missing"));
  CHECK_THROWS_AS(config.get_number("label"), rsm::ParseError);
  CHECK_THROWS_AS(config.get_string("missing"), rsm::ParseError);

  std::istringstream broken("radius 1.5\n");
  CHECK_THROWS_AS(rsm::KeyValueConfig::parse(broken), rsm::ParseError);
}

TEST_CASE("reports validate against the shipped schemas") {
  // small end-to-end pipeline on a noiseless fixture
  const auto design = rsm::build_design(rsm::ccd_design(2, std::sqrt(2.0), 3));
  Matrix b(6, 2);
  b.col(0) << 0.0, -1.0, 0.5, 1.0, 0.8, 0.2;
  b.col(1) << 0.0, 0.6, -0.4, 0.9, 1.1, -0.2;
  rsm::RandomStream rng(8);
  const Matrix y = design.X * b +
                   rsm::sample_errors(0.0025 * Matrix::Identity(2, 2), design.runs(), rng);
  const auto fit = rsm::fit(design, y);

  const std::string fit_json = rsm::fit_report(design, fit);
  CHECK(schema_check::validate_document(json::parse(fit_json), load_schema("fit-v1.schema.json"))
            .empty());

  const rsm::WeightVector w(Vector::Constant(2, 0.5));
  const rsm::SphereRegion region(1.0);
  const auto obj = rsm::weighted_objective(w, fit.coefficients);
  const auto point = rsm::solve_sphere(obj, region);
  const std::string optimize_json =
      rsm::optimize_report(w, region, fit.coefficients, point,
                           rsm::evaluate_functional(obj, point.x_star),
                           rsm::predict(fit.coefficients, point.x_star));
  CHECK(schema_check::validate_document(json::parse(optimize_json),
                                        load_schema("optimize-v1.schema.json"))
            .empty());

  const auto blocks = rsm::lagrangian_blocks(obj, w, point);
  const auto jac = rsm::solution_jacobian(blocks, point.active);
  const auto theta = rsm::coefficient_covariance(fit, fit.runs);
  auto report = rsm::critical_point_covariance(jac, theta);
  report.alpha = 0.05;
  report.intervals = rsm::confidence_intervals(point.x_star, report, 0.05);
  report.ellipsoid = rsm::confidence_ellipsoid(point.x_star, report, 0.05);
  report.has_ellipsoid = true;
  const std::string analyze_json = rsm::analyze_report(w, region, point, jac, report, 0.05);
  CHECK(schema_check::validate_document(json::parse(analyze_json),
                                        load_schema("analyze-v1.schema.json"))
            .empty());

  rsm::SimulationConfig sim_config;
  sim_config.truth = fit.coefficients;
  sim_config.sigma = 0.0025 * Matrix::Identity(2, 2);
  sim_config.design = design;
  sim_config.weights = w;
  sim_config.region = region;
  sim_config.replicates = 150;
  sim_config.seed = 5;
  sim_config.alpha = 0.05;
  const auto result = rsm::run_simulation(sim_config);
  const auto comparison = rsm::empirical_vs_asymptotic(result);
  const std::string simulate_json = rsm::simulate_report(sim_config, result, comparison);
  CHECK(schema_check::validate_document(json::parse(simulate_json),
                                        load_schema("simulate-v1.schema.json"))
            .empty());

  // the comparison block may be absent
  const std::string no_cmp = rsm::simulate_report(sim_config, result, std::nullopt);
  CHECK(schema_check::validate_document(json::parse(no_cmp),
                                        load_schema("simulate-v1.schema.json"))
            .empty());

  // schema violations are caught by the checker itself
  json tampered = json::parse(fit_json);
  tampered.erase("dof");
  CHECK(!schema_check::validate_document(tampered, load_schema("fit-v1.schema.json")).empty());
}

TEST_CASE("report doubles round-trip through 17 significant digits") {
  const auto design = rsm::build_design(rsm::ccd_design(1, 1.0, 1));
  Matrix b(3, 1);
  b << 0.0, -2.0, 1.0;
  const Matrix y = design.X * b;
  const auto fit = rsm::fit(design, y);
  const rsm::WeightVector w(Vector::Ones(1));
  const rsm::SphereRegion region(2.0);
  const auto obj = rsm::weighted_objective(w, fit.coefficients);
  const auto point = rsm::solve_sphere(obj, region);
  const std::string text =
      rsm::optimize_report(w, region, fit.coefficients, point,
                           rsm::evaluate_functional(obj, point.x_star),
                           rsm::predict(fit.coefficients, point.x_star));
  const json parsed = json::parse(text);
  CHECK(parsed["x_star"][0].get<double>() == point.x_star(0));
  CHECK(parsed["lambda_star"].get<double>() == point.lambda_star);
  CHECK(parsed["objective_value"].get<double>() ==
        rsm::evaluate_functional(obj, point.x_star));

  // identical inputs give identical documents modulo the timestamp line
  const std::string again =
      rsm::optimize_report(w, region, fit.coefficients, point,
                           rsm::evaluate_functional(obj, point.x_star),
                           rsm::predict(fit.coefficients, point.x_star));
  CHECK(strip_timestamp(text) == strip_timestamp(again));
}

}  // TEST_SUITE
