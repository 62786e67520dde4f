#pragma once

#include <cstddef>
#include <vector>

namespace pampac {

struct RunParams {
  int n_dim = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int lambda_index = 0;
  double delta_lambda = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
  /// Signed: the sign fixes the direction of travel along lambda.
  double h_init = 0.0;
  int max_iter = 0;
  double tol_residual = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
  int max_depth = 0;     // D
  int max_children = 0;  // W
  std::vector<double> scalings;
  int verbose = 0;
  int worker_budget = 0;

  friend bool operator==(const RunParams&, const RunParams&) = default;
};

/// Slots needed by a complete tree of width W and depth D, i.e. W + W^2 + ... + W^D.
int full_tree_budget(int max_children, int max_depth);

/// Throws std::invalid_argument naming the offending field.
void validate(const RunParams& params);

}  // namespace pampac
