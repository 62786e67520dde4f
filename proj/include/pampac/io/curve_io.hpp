#pragma once
// Curve files: one point per line, whitespace-separated fields printed with
// 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pampac/problem.hpp"

namespace pampac {

class CurveFormatError : public std::runtime_error {
 public:
  CurveFormatError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

void write_curve_point(std::ostream& sink, std::span<const double> z);
void write_curve_point(std::ostream& sink, const CurvePoint& point);

/// Parses every non-blank line; each must hold exactly n_dim numbers.
std::vector<Vector> parse_curve(std::string_view text, int n_dim);
std::vector<Vector> read_curve(const std::filesystem::path& path, int n_dim);

/// First point of the file; residual_norm is left at zero (not yet evaluated).
CurvePoint read_initial_point(const std::filesystem::path& path, int n_dim);

}  // namespace pampac
