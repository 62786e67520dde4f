#pragma once
// Serial reference algorithms: natural parameter continuation and
// pseudo-arclength continuation with a doubling/halving step controller.

#include <cstddef>
#include <span>
#include <vector>

#include "pampac/engine.hpp"

namespace pampac {

struct SerialTrace {
  std::vector<CurvePoint> accepted_points;
  std::size_t corrector_steps_total = 0;
  std::size_t failed_predictors = 0;
  TerminationReason termination_reason = TerminationReason::iteration_budget;
};

struct SerialOptions {
  double grow = 2.0;
  double shrink = 0.5;
  std::size_t max_predictors = 1'000'000;
};

/// Steps lambda by h with x corrected at fixed lambda; h is halved on failure.
SerialTrace natural_continuation(const ProblemDefinition& problem, const RunParams& params,
                                 std::span<const double> initial_point, const SerialOptions& options = {});

/// Secant-predictor pseudo-arclength continuation started by the same
/// bootstrap as the parallel engine.
SerialTrace serial_pac(const ProblemDefinition& problem, const RunParams& params,
                       std::span<const double> initial_point, const SerialOptions& options = {});

}  // namespace pampac
