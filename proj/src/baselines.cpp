#include "pampac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pampac/kernels.hpp"

namespace pampac {
namespace {

struct Corrected {
  std::optional<Vector> z;
  double residual = 0.0;
  std::size_t steps = 0;
};

// Runs corrector steps from the predictor until the colouring rules declare
// convergence or divergence.
Corrected correct(const ProblemDefinition& problem, const RunParams& params, std::span<const double> z_base,
                  const Direction& t, double h) {
  Corrected out;
  Vector zeta(z_base.begin(), z_base.end());
  kernels::axpy(h, t.values(), zeta);
  auto previous = residual_norm(problem, zeta);
  if (!previous) return out;
  for (int nu = 1;; ++nu) {
    auto next = corrector_step(problem, zeta, t, z_base, h);
    ++out.steps;
    if (!next) return out;
    zeta = std::move(*next);
    const auto r = residual_norm(problem, zeta);
    if (!r) return out;
    const Color c = classify(nu, *r, previous, params);
    if (c == Color::green) {
      out.z = std::move(zeta);
      out.residual = *r;
      return out;
    }
    if (c == Color::black || (c == Color::yellow && yellow_stalled(nu, *r, previous, params))) return out;
    previous = r;
  }
}

void check_start(const ProblemDefinition& problem, const RunParams& params, std::span<const double> initial_point) {
  validate(params);
  validate(problem);
  if (static_cast<int>(initial_point.size()) != problem.n_dim) {
    throw std::invalid_argument("initial point has wrong length");
  }
  const auto r = residual_norm(problem, initial_point);
  if (!r || *r > params.tol_residual) throw std::invalid_argument("initial point is not converged");
}

class Tracker {
 public:
  Tracker(const ProblemDefinition& problem, const RunParams& params) : problem_(problem), params_(params) {}

  bool crossed(std::span<const double> z) const {
    const double lambda = problem_.lambda(z);
    if (params_.h_init > 0.0) return lambda >= params_.lambda_max || lambda < params_.lambda_min;
    return lambda <= params_.lambda_min || lambda > params_.lambda_max;
  }

 private:
  const ProblemDefinition& problem_;
  const RunParams& params_;
};

}  // namespace

SerialTrace natural_continuation(const ProblemDefinition& problem, const RunParams& params,
                                 std::span<const double> initial_point, const SerialOptions& options) {
  check_start(problem, params, initial_point);
  SerialTrace trace;
  const Tracker tracker(problem, params);
  const Direction axis = Direction::axis(initial_point.size(), static_cast<std::size_t>(problem.lambda_index));
  Vector z(initial_point.begin(), initial_point.end());
  trace.accepted_points.push_back({z, *residual_norm(problem, z)});

  double h = params.h_init;
  for (std::size_t k = 0; k < options.max_predictors; ++k) {
    if (tracker.crossed(z)) {
      trace.termination_reason = TerminationReason::reached_lambda_max;
      return trace;
    }
    Corrected c = correct(problem, params, z, axis, h);
    trace.corrector_steps_total += c.steps;
    if (c.z) {
      z = std::move(*c.z);
      trace.accepted_points.push_back({z, c.residual});
      continue;
    }
    ++trace.failed_predictors;
    h *= options.shrink;
    if (std::abs(h) < params.h_min) {
      trace.termination_reason = TerminationReason::step_underflow;
      return trace;
    }
  }
  trace.termination_reason = TerminationReason::iteration_budget;
  return trace;
}

SerialTrace serial_pac(const ProblemDefinition& problem, const RunParams& params,
                       std::span<const double> initial_point, const SerialOptions& options) {
  check_start(problem, params, initial_point);
  SerialTrace trace;
  const Tracker tracker(problem, params);
  BootstrapResult start = bootstrap(problem, params, initial_point);
  Vector z = start.point.z;
  Direction t = start.direction;
  trace.accepted_points.push_back(start.point);

  double h = std::abs(params.h_init);
  for (std::size_t k = 0; k < options.max_predictors; ++k) {
    if (tracker.crossed(z)) {
      trace.termination_reason = TerminationReason::reached_lambda_max;
      return trace;
    }
    Corrected c = correct(problem, params, z, t, h);
    trace.corrector_steps_total += c.steps;
    if (c.z) {
      Direction next = Direction::secant(z, *c.z).value_or(t);
      if (kernels::dot(next.values(), t.values()) < 0.0) next = next.negated();
      t = std::move(next);
      z = std::move(*c.z);
      trace.accepted_points.push_back({z, c.residual});
      h = std::min(h * options.grow, params.h_max);
      continue;
    }
    ++trace.failed_predictors;
    h *= options.shrink;
    if (h < params.h_min) {
      trace.termination_reason = TerminationReason::step_underflow;
      return trace;
    }
  }
  trace.termination_reason = TerminationReason::iteration_budget;
  return trace;
}

}  // namespace pampac
