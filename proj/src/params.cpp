#include "pampac/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pampac {
namespace {

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw std::invalid_argument(field + ": " + why);
}

void require_finite(const char* field, double v) {
  if (!std::isfinite(v)) reject(field, "must be finite");
}

}  // namespace

int full_tree_budget(int max_children, int max_depth) {
  long long total = 0;
  long long level = 1;
  for (int d = 0; d < max_depth; ++d) {
    level *= max_children;
    total += level;
    if (total > std::numeric_limits<int>::max()) return std::numeric_limits<int>::max();
  }
  return static_cast<int>(total);
}

void validate(const RunParams& p) {
  if (p.n_dim < 2) reject("N_DIM", "must be at least 2");
  if (p.lambda_index < 0 || p.lambda_index >= p.n_dim) reject("LAMBDA_INDEX", "must lie in [0, N_DIM)");
  require_finite("LAMBDA_MIN", p.lambda_min);
  require_finite("LAMBDA_MAX", p.lambda_max);
  if (!(p.lambda_min < p.lambda_max)) reject("LAMBDA_MAX", "must exceed LAMBDA_MIN");
  require_finite("DELTA_LAMBDA", p.delta_lambda);
  if (p.delta_lambda == 0.0) reject("DELTA_LAMBDA", "must be nonzero");
  require_finite("H_MIN", p.h_min);
  require_finite("H_MAX", p.h_max);
  require_finite("H_INIT", p.h_init);
  if (!(p.h_min > 0.0)) reject("H_MIN", "must be positive");
  if (!(std::abs(p.h_init) >= p.h_min)) reject("H_INIT", "|H_INIT| must be at least H_MIN");
  if (!(std::abs(p.h_init) <= p.h_max)) reject("H_INIT", "|H_INIT| must not exceed H_MAX");
  if (p.max_iter < 1) reject("MAX_ITER", "must be positive");
  if (!(p.tol_residual > 0.0) || !std::isfinite(p.tol_residual)) reject("TOL_RESIDUAL", "must be positive");
  if (!(p.mu > 0.0 && p.mu < 1.0)) reject("MU", "must lie in (0, 1)");
  if (!(p.gamma > 1.0) || !std::isfinite(p.gamma)) reject("GAMMA", "must exceed 1");
  if (p.max_depth < 1) reject("MAX_DEPTH", "must be positive");
  if (p.max_children < 1) reject("MAX_CHILDREN", "must be positive");
  if (p.scalings.size() != static_cast<std::size_t>(p.max_children)) {
    reject("SCALE_PROCESS_K", "expected " + std::to_string(p.max_children) + " scalings, got " +
                                  std::to_string(p.scalings.size()));
  }
  for (std::size_t k = 0; k < p.scalings.size(); ++k) {
    if (!(p.scalings[k] > 0.0) || !std::isfinite(p.scalings[k])) {
      reject("SCALE_PROCESS_" + std::to_string(k), "must be positive");
    }
  }
  if (p.verbose < 0) reject("VERBOSE", "must be nonnegative");
  if (p.worker_budget < 1) reject("WORKER_BUDGET", "must be positive");
}

}  // namespace pampac
