#include "pampac/problems/circle.hpp"

namespace pampac {

ProblemDefinition circle_problem() {
  return make_newton_problem(
      2, 1, [](std::span<const double> z) { return Vector{z[0] * z[0] + z[1] * z[1] - 1.0}; },
      [](std::span<const double> z) {
        Matrix j(1, 2);
        j(0, 0) = 2.0 * z[0];
        j(0, 1) = 2.0 * z[1];
        return j;
      });
}

}  // namespace pampac
