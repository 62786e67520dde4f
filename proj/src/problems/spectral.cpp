#include "pampac/problems/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pampac::spectral {
namespace {

void require_grid(std::size_t n) {
  if (n < 4 || !is_power_of_two(n)) throw std::invalid_argument("spectral grid size must be a power of two >= 4");
}

// exp(i * 2 pi * m / n) components with m reduced mod n first.
double cos_turn(std::size_t m, std::size_t n) {
  return std::cos(2.0 * std::numbers::pi * static_cast<double>(m % n) / static_cast<double>(n));
}
double sin_turn(std::size_t m, std::size_t n) {
  return std::sin(2.0 * std::numbers::pi * static_cast<double>(m % n) / static_cast<double>(n));
}

Matrix circulant(std::span<const double> first_column) {
  const std::size_t n = first_column.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = first_column[(i + n - j) % n];
  }
  return m;
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

Vector grid(std::size_t n) {
  Vector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
  return x;
}

Matrix forward_transform(std::size_t n) {
  require_grid(n);
  const double inv = 1.0 / static_cast<double>(n);
  Matrix f(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    f(0, j) = inv;
    f(n - 1, j) = (j % 2 == 0 ? 1.0 : -1.0) * inv;
    for (std::size_t k = 1; k < n / 2; ++k) {
      f(2 * k - 1, j) = 2.0 * inv * cos_turn(k * j, n);
      f(2 * k, j) = 2.0 * inv * sin_turn(k * j, n);
    }
  }
  return f;
}

Matrix inverse_transform(std::size_t n) {
  require_grid(n);
  Matrix g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    g(j, 0) = 1.0;
    g(j, n - 1) = j % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
      g(j, 2 * k - 1) = cos_turn(k * j, n);
      g(j, 2 * k) = sin_turn(k * j, n);
    }
  }
  return g;
}

Matrix derivative_matrix(std::size_t n, int order) {
  require_grid(n);
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  const double inv = 1.0 / static_cast<double>(n);
  const std::size_t half = n / 2;
  Vector col(n, 0.0);
  if (order % 2 == 0) {
    const double sign = (order / 2) % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t d = 0; d < n; ++d) {
      double s = order == 0 ? 1.0 : 0.0;
      for (std::size_t k = 1; k < half; ++k) s += 2.0 * sign * std::pow(static_cast<double>(k), order) * cos_turn(k * d, n);
      s += sign * std::pow(static_cast<double>(half), order) * (d % 2 == 0 ? 1.0 : -1.0);
      col[d] = s * inv;
    }
  } else {
    const double sign = ((order - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t d = 0; d < n; ++d) {
      double s = 0.0;
      for (std::size_t k = 1; k < half; ++k) s -= 2.0 * sign * std::pow(static_cast<double>(k), order) * sin_turn(k * d, n);
      col[d] = s * inv;
    }
  }
  return circulant(col);
}

Matrix dealias_matrix(std::size_t n) {
  require_grid(n);
  const double inv = 1.0 / static_cast<double>(n);
  Vector col(n, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    double s = 1.0;
    for (std::size_t k = 1; 3 * k < n; ++k) s += 2.0 * cos_turn(k * d, n);
    col[d] = s * inv;
  }
  return circulant(col);
}

Vector differentiate(std::span<const double> w, int order) {
  const std::size_t n = w.size();
  Vector a(n);
  multiply(forward_transform(n), w, a);
  Vector b(n, 0.0);
  if (order == 0) b = a;
  if (order % 2 == 0) b[n - 1] = a[n - 1] * std::pow(-static_cast<double>(n / 2) * static_cast<double>(n / 2), order / 2);
  for (std::size_t k = 1; k < n / 2; ++k) {
    // (ik)^p applied to c cos(kx) + s sin(kx) = Re[(c - i s) e^{ikx}].
    double c = a[2 * k - 1];
    double s = a[2 * k];
    const double kk = static_cast<double>(k);
    for (int p = 0; p < order; ++p) {
      const double nc = kk * s;
      const double ns = -kk * c;
      c = nc;
      s = ns;
    }
    b[2 * k - 1] = c;
    b[2 * k] = s;
  }
  Vector out(n);
  multiply(inverse_transform(n), b, out);
  return out;
}

}  // namespace pampac::spectral
