// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "rsm/asymptotics.hpp"
#include "rsm/design.hpp"
#include "rsm/montecarlo.hpp"
#include "rsm/regression.hpp"
#include "rsm/scalarize.hpp"
#include "rsm/sensitivity.hpp"
#include "rsm/solver.hpp"

namespace rsm {

/// JSON reports for the CLI, one builder per subcommand. Each document
/// carries a "schema" tag matching a file under schemas/ and a "timestamp"
/// that callers exclude when comparing runs. Numbers are serialized with 17
/// significant digits so every double round-trips exactly.

std::string fit_report(const Design& design, const FitResult& fit);

std::string optimize_report(const WeightVector& weights, const SphereRegion& region,
                            const CoefficientMatrix& coefficients, const KktPoint& point,
                            double objective_value, const Vector& predicted_response);

std::string analyze_report(const WeightVector& weights, const SphereRegion& region,
                           const KktPoint& point, const SensitivityJacobian& jacobian,
                           const AsymptoticReport& asymptotics, double alpha);

std::string simulate_report(const SimulationConfig& config, const SimulationResult& result,
                            const std::optional<ComparisonRecord>& comparison);

}  // namespace rsm
