#pragma once

#include "pampac/problem.hpp"

namespace pampac {

/// F(x, lambda) = x^2 + lambda^2 - 1 with z = (x, lambda); folds at (0, +-1).
ProblemDefinition circle_problem();

}  // namespace pampac
