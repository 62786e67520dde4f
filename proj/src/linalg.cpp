#include "pampac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pampac/kernels.hpp"

namespace pampac {

void multiply(const Matrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.cols() || y.size() != a.rows()) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  kernels::active().gemv(a.data(), a.cols(), a.rows(), a.cols(), x.data(), y.data());
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) kernels::axpy(aik, b.row(k), ci);
    }
  }
  return c;
}

std::optional<LuFactorization> LuFactorization::factor(Matrix a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("LU: matrix must be square");

  double max_row_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_row_norm = std::max(max_row_norm, kernels::nrm2(a.row(i)));
  if (!std::isfinite(max_row_norm) || max_row_norm == 0.0) return std::nullopt;
  const double tiny = kSingularityRatio * max_row_norm;

  std::vector<std::size_t> piv(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (const double v = std::abs(a(i, k)); v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best >= tiny)) return std::nullopt;
    piv[k] = p;
    if (p != k) std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(p).begin());

    const double inv = 1.0 / a(k, k);
    const auto pivot_tail = a.row(k).subspan(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      double& lik = a(i, k);
      if (lik == 0.0) continue;
      lik *= inv;
      kernels::axpy(-lik, pivot_tail, a.row(i).subspan(k + 1));
    }
  }
  return LuFactorization(std::move(a), std::move(piv));
}

void LuFactorization::solve_in_place(std::span<double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw std::invalid_argument("LU solve: dimension mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    b[i] -= kernels::dot(lu_.row(i).first(i), b.first(i));
  }
  for (std::size_t i = n; i-- > 0;) {
    const auto tail = lu_.row(i).subspan(i + 1);
    b[i] = (b[i] - kernels::dot(tail, b.subspan(i + 1))) / lu_(i, i);
  }
}

std::optional<Vector> solve(Matrix a, std::span<const double> b) {
  auto lu = LuFactorization::factor(std::move(a));
  if (!lu) return std::nullopt;
  Vector x(b.begin(), b.end());
  lu->solve_in_place(x);
  for (double v : x) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  return x;
}

}  // namespace pampac
