#pragma once
// Continuation problems F : R^N -> R^(N-1), N = n_dim, with the continuation
// parameter lambda stored at z[lambda_index].

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "pampac/linalg.hpp"

namespace pampac {

/// A point on (or near) the solution curve together with ||F(z)||_2.
struct CurvePoint {
  Vector z;
  double residual_norm = 0.0;
};

/// Unit vector in R^N used as a tangent or secant for prediction.
class Direction {
 public:
  /// Normalises v.  Returns nullopt when ||v|| is below kMinNorm or not finite.
  static std::optional<Direction> from(std::span<const double> v);
  /// Unit direction along (to - from).
  static std::optional<Direction> secant(std::span<const double> from, std::span<const double> to);
  static Direction axis(std::size_t n, std::size_t index);

  static constexpr double kMinNorm = 1e-14;

  std::span<const double> values() const noexcept { return t_; }
  std::size_t size() const noexcept { return t_.size(); }
  double operator[](std::size_t i) const noexcept { return t_[i]; }
  Direction negated() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  explicit Direction(Vector t) : t_(std::move(t)) {}
  Vector t_;
};

using ResidualFn = std::function<Vector(std::span<const double> z)>;
/// Returns the (N-1) x N Jacobian F_z.
using JacobianFn = std::function<Matrix(std::span<const double> z)>;
/// One corrector iteration for the system F(zeta) = 0, t.(zeta - z_base) = h.
/// nullopt signals a failed step (singular system, non-finite values).
using CorrectorFn = std::function<std::optional<Vector>(
    std::span<const double> zeta, const Direction& tangent, std::span<const double> z_base, double h)>;

/// Callbacks must be pure: the engine calls them concurrently from worker
/// threads on different nodes.
struct ProblemDefinition {
  int n_dim = 0;
  int lambda_index = 0;
  ResidualFn residual;
  CorrectorFn corrector;
  JacobianFn jacobian;  // optional

  double lambda(std::span<const double> z) const { return z[static_cast<std::size_t>(lambda_index)]; }
};

/// Builds a problem whose corrector is bordered_newton_step over `jacobian`.
ProblemDefinition make_newton_problem(int n_dim, int lambda_index, ResidualFn residual, JacobianFn jacobian);

/// Throws std::invalid_argument on a malformed definition.
void validate(const ProblemDefinition& problem);

/// F(z).  Throws std::invalid_argument when z has the wrong length and
/// std::logic_error when the callback returns the wrong length; returns
/// nullopt when the output contains NaN/Inf.
std::optional<Vector> evaluate_residual(const ProblemDefinition& problem, std::span<const double> z);

std::optional<double> residual_norm(const ProblemDefinition& problem, std::span<const double> z);

/// zeta + delta with delta solving [F_z(zeta); t^T] delta = [-F(zeta); h - t.(zeta - z_base)].
std::optional<Vector> bordered_newton_step(const ProblemDefinition& problem, std::span<const double> zeta,
                                           const Direction& tangent, std::span<const double> z_base, double h);

/// Runs problem.corrector and checks its output (length n_dim, finite).
std::optional<Vector> corrector_step(const ProblemDefinition& problem, std::span<const double> zeta,
                                     const Direction& tangent, std::span<const double> z_base, double h);

}  // namespace pampac
