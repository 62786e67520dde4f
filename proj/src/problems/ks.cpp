#include "pampac/problems/ks.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "pampac/kernels.hpp"
#include "pampac/problems/spectral.hpp"

namespace pampac {
namespace {

struct KsOperators {
  std::size_t n = 0;
  double a = 0.0;
  Matrix d1;
  Matrix d2;
  Matrix d4;
  Matrix filter;
  Vector w_ref;
  Vector w_ref_x;

  explicit KsOperators(const KsConfig& cfg)
      : n(cfg.n_grid),
        a(cfg.amplitude_a),
        d1(spectral::derivative_matrix(n, 1)),
        d2(spectral::derivative_matrix(n, 2)),
        d4(spectral::derivative_matrix(n, 4)),
        filter(spectral::dealias_matrix(n)),
        w_ref(cfg.reference_profile),
        w_ref_x(n) {
    multiply(d1, w_ref, w_ref_x);
  }

  Vector residual(std::span<const double> z) const {
    if (z.size() != n + 2) throw std::invalid_argument("ks_residual: expected n_grid + 2 unknowns");
    const auto w = z.first(n);
    const double c = z[n];
    const double lambda = z[n + 1];

    Vector wx(n), q(n), r(n + 1);
    multiply(d1, w, wx);
    for (std::size_t i = 0; i < n; ++i) q[i] = w[i] * wx[i];
    std::span<double> pde(r.data(), n);
    multiply(filter, q, pde);
    Vector tmp(n);
    multiply(d2, w, tmp);
    kernels::axpy(1.0, tmp, pde);
    multiply(d4, w, tmp);
    kernels::axpy(lambda, tmp, pde);
    kernels::axpy(-c, wx, pde);
    for (std::size_t i = 0; i < n; ++i) pde[i] -= a * std::sin(w[i]);

    Vector dw(w.begin(), w.end());
    kernels::axpy(-1.0, w_ref, dw);
    r[n] = kernels::dot(dw, w_ref_x) / static_cast<double>(n);
    return r;
  }

  Matrix jacobian(std::span<const double> z) const {
    const auto w = z.first(n);
    const double c = z[n];
    const double lambda = z[n + 1];

    Vector wx(n), w4(n);
    multiply(d1, w, wx);
    multiply(d4, w, w4);

    // P diag(w) D1
    Matrix pw = filter;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) pw(i, j) *= w[j];
    }
    const Matrix conv = multiply(pw, d1);

    Matrix jac(n + 1, n + 2);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = jac.row(i).first(n);
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = conv(i, j) + filter(i, j) * wx[j] + d2(i, j) + lambda * d4(i, j) - c * d1(i, j);
      }
      row[i] -= a * std::cos(w[i]);
      jac(i, n) = -wx[i];
      jac(i, n + 1) = w4[i];
    }
    for (std::size_t j = 0; j < n; ++j) jac(n, j) = w_ref_x[j] / static_cast<double>(n);
    return jac;
  }
};

}  // namespace

void validate(const KsConfig& config) {
  if (config.n_grid < 16 || !spectral::is_power_of_two(config.n_grid)) {
    throw std::invalid_argument("KsConfig: n_grid must be a power of two >= 16, got " + std::to_string(config.n_grid));
  }
  if (!std::isfinite(config.amplitude_a)) throw std::invalid_argument("KsConfig: amplitude must be finite");
  if (config.reference_profile.size() != config.n_grid) {
    throw std::invalid_argument("KsConfig: reference profile must have n_grid entries");
  }
  const Vector d = spectral::differentiate(config.reference_profile, 1);
  if (!(kernels::nrm2(d) > 1e-12)) throw std::invalid_argument("KsConfig: reference profile has zero derivative");
}

KsConfig make_ks_config(std::size_t n_grid, double amplitude_a, std::span<const double> reference_profile) {
  KsConfig cfg;
  cfg.n_grid = n_grid;
  cfg.amplitude_a = amplitude_a;
  cfg.reference_profile.assign(reference_profile.begin(), reference_profile.end());
  return cfg;
}

Vector ks_residual(const KsConfig& config, std::span<const double> z) {
  validate(config);
  return KsOperators(config).residual(z);
}

ProblemDefinition ks_problem(const KsConfig& config) {
  validate(config);
  auto ops = std::make_shared<const KsOperators>(config);
  const int n = static_cast<int>(config.n_grid);
  return make_newton_problem(
      n + 2, n + 1, [ops](std::span<const double> z) { return ops->residual(z); },
      [ops](std::span<const double> z) { return ops->jacobian(z); });
}

}  // namespace pampac
