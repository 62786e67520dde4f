#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace pampac {

using Vector = std::vector<double>;

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  void resize(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(rows * cols, 0.0);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// y = A x
void multiply(const Matrix& a, std::span<const double> x, std::span<double> y);
/// C = A B
Matrix multiply(const Matrix& a, const Matrix& b);

/// In-place LU factorisation with partial (row) pivoting, PA = LU.
class LuFactorization {
 public:
  /// Pivots with |u_kk| below this multiple of the largest row 2-norm of the
  /// input are treated as zero.
  static constexpr double kSingularityRatio = 1e-14;

  /// Returns nullopt for a singular (or non-finite) matrix.
  static std::optional<LuFactorization> factor(Matrix a);

  /// Solves A x = b; b is overwritten with x.
  void solve_in_place(std::span<double> b) const;

  std::size_t size() const noexcept { return lu_.rows(); }

 private:
  LuFactorization(Matrix lu, std::vector<std::size_t> pivots)
      : lu_(std::move(lu)), pivots_(std::move(pivots)) {}

  Matrix lu_;
  std::vector<std::size_t> pivots_;
};

/// Convenience wrapper: factor and solve, nullopt when singular.
std::optional<Vector> solve(Matrix a, std::span<const double> b);

}  // namespace pampac
