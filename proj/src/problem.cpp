#include "pampac/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pampac/kernels.hpp"

namespace pampac {
namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_length(std::span<const double> v, int n, const char* what) {
  if (v.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                                std::to_string(v.size()));
  }
}

}  // namespace

std::optional<Direction> Direction::from(std::span<const double> v) {
  const double norm = kernels::nrm2(v);
  if (!std::isfinite(norm) || norm < kMinNorm) return std::nullopt;
  Vector t(v.begin(), v.end());
  kernels::scale(1.0 / norm, t);
  return Direction(std::move(t));
}

std::optional<Direction> Direction::secant(std::span<const double> from, std::span<const double> to) {
  if (from.size() != to.size()) throw std::invalid_argument("secant: dimension mismatch");
  Vector d(to.begin(), to.end());
  kernels::axpy(-1.0, from, d);
  return Direction::from(d);
}

Direction Direction::axis(std::size_t n, std::size_t index) {
  if (index >= n) throw std::invalid_argument("axis: index out of range");
  Vector t(n, 0.0);
  t[index] = 1.0;
  return Direction(std::move(t));
}

Direction Direction::negated() const {
  Vector t = t_;
  for (double& v : t) v = -v;
  return Direction(std::move(t));
}

ProblemDefinition make_newton_problem(int n_dim, int lambda_index, ResidualFn residual, JacobianFn jacobian) {
  ProblemDefinition p;
  p.n_dim = n_dim;
  p.lambda_index = lambda_index;
  p.residual = std::move(residual);
  p.jacobian = std::move(jacobian);
  p.corrector = [n_dim, lambda_index, res = p.residual, jac = p.jacobian](
                    std::span<const double> zeta, const Direction& t, std::span<const double> z_base, double h) {
    ProblemDefinition self{n_dim, lambda_index, res, {}, jac};
    return bordered_newton_step(self, zeta, t, z_base, h);
  };
  return p;
}

void validate(const ProblemDefinition& problem) {
  if (problem.n_dim < 2) throw std::invalid_argument("problem: n_dim must be at least 2");
  if (problem.lambda_index < 0 || problem.lambda_index >= problem.n_dim) {
    throw std::invalid_argument("problem: lambda_index out of range");
  }
  if (!problem.residual) throw std::invalid_argument("problem: missing residual evaluator");
  if (!problem.corrector) throw std::invalid_argument("problem: missing corrector stepper");
}

std::optional<Vector> evaluate_residual(const ProblemDefinition& problem, std::span<const double> z) {
  require_length(z, problem.n_dim, "evaluate_residual");
  Vector r = problem.residual(z);
  if (r.size() != static_cast<std::size_t>(problem.n_dim - 1)) {
    throw std::logic_error("residual evaluator returned " + std::to_string(r.size()) + " entries, expected " +
                           std::to_string(problem.n_dim - 1));
  }
  if (!all_finite(r)) return std::nullopt;
  return r;
}

std::optional<double> residual_norm(const ProblemDefinition& problem, std::span<const double> z) {
  auto r = evaluate_residual(problem, z);
  if (!r) return std::nullopt;
  const double norm = kernels::nrm2(*r);
  if (!std::isfinite(norm)) return std::nullopt;
  return norm;
}

std::optional<Vector> bordered_newton_step(const ProblemDefinition& problem, std::span<const double> zeta,
                                           const Direction& tangent, std::span<const double> z_base, double h) {
  if (!problem.jacobian) throw std::invalid_argument("bordered_newton_step: problem has no Jacobian");
  require_length(zeta, problem.n_dim, "bordered_newton_step");
  require_length(z_base, problem.n_dim, "bordered_newton_step (z_base)");
  require_length(tangent.values(), problem.n_dim, "bordered_newton_step (tangent)");
  if (!all_finite(zeta)) return std::nullopt;

  const auto n = static_cast<std::size_t>(problem.n_dim);
  auto r = evaluate_residual(problem, zeta);
  if (!r) return std::nullopt;
  Matrix jac = problem.jacobian(zeta);
  if (jac.rows() != n - 1 || jac.cols() != n) throw std::logic_error("Jacobian evaluator returned wrong shape");

  Matrix m(n, n);
  std::copy(jac.data(), jac.data() + (n - 1) * n, m.data());
  std::copy(tangent.values().begin(), tangent.values().end(), m.row(n - 1).begin());

  Vector rhs(n);
  for (std::size_t i = 0; i + 1 < n; ++i) rhs[i] = -(*r)[i];
  double offset = 0.0;
  for (std::size_t i = 0; i < n; ++i) offset += tangent[i] * (zeta[i] - z_base[i]);
  rhs[n - 1] = h - offset;

  auto delta = solve(std::move(m), rhs);
  if (!delta) return std::nullopt;
  Vector out(zeta.begin(), zeta.end());
  kernels::axpy(1.0, *delta, out);
  if (!all_finite(out)) return std::nullopt;
  return out;
}

std::optional<Vector> corrector_step(const ProblemDefinition& problem, std::span<const double> zeta,
                                     const Direction& tangent, std::span<const double> z_base, double h) {
  require_length(zeta, problem.n_dim, "corrector_step");
  auto out = problem.corrector(zeta, tangent, z_base, h);
  if (!out) return std::nullopt;
  if (out->size() != static_cast<std::size_t>(problem.n_dim)) {
    throw std::logic_error("corrector stepper returned wrong length");
  }
  if (!all_finite(*out)) return std::nullopt;
  return out;
}

}  // namespace pampac
