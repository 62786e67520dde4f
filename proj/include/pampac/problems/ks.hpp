#pragma once
// Travelling waves of the modified Kuramoto-Sivashinsky equation on [0, 2 pi):
//   -c w' + w w' + w'' + lambda w'''' - A sin(w) = 0,
// closed by the phase condition <w - w_ref, w_ref'> / n = 0.
// Unknowns z = (w_0, ..., w_{n-1}, c, lambda).

#include <cstddef>
#include <span>

#include "pampac/problem.hpp"

namespace pampac {

struct KsConfig {
  std::size_t n_grid = 0;
  double amplitude_a = 8.09;
  Vector reference_profile;  // phase template w_ref, length n_grid
};

/// Throws std::invalid_argument for a malformed configuration.
void validate(const KsConfig& config);

/// Zero template when none is known yet; validate() rejects it.
KsConfig make_ks_config(std::size_t n_grid, double amplitude_a, std::span<const double> reference_profile);

/// PDE residual on the grid followed by the phase condition (length n + 1).
Vector ks_residual(const KsConfig& config, std::span<const double> z);

/// Problem of dimension n + 2 with lambda at index n + 1, a dense analytic
/// Jacobian and the bordered Newton corrector.
ProblemDefinition ks_problem(const KsConfig& config);

}  // namespace pampac
