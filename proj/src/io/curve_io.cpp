#include "pampac/io/curve_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace pampac {

CurveFormatError::CurveFormatError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

void write_curve_point(std::ostream& sink, std::span<const double> z) {
  char buf[32];
  for (std::size_t i = 0; i < z.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", z[i]);
    if (i > 0) sink << ' ';
    sink << buf;
  }
  sink << '\n';
}

void write_curve_point(std::ostream& sink, const CurvePoint& point) { write_curve_point(sink, point.z); }

std::vector<Vector> parse_curve(std::string_view text, int n_dim) {
  std::vector<Vector> points;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    Vector z;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      std::string_view token = line.substr(i, j - i);
      if (token.size() > 1 && token.front() == '+') token.remove_prefix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
        throw CurveFormatError(line_no, "not a finite number: '" + std::string(line.substr(i, j - i)) + "'");
      }
      z.push_back(v);
      i = j;
    }
    if (z.empty()) continue;
    if (z.size() != static_cast<std::size_t>(n_dim)) {
      throw CurveFormatError(line_no, "expected " + std::to_string(n_dim) + " fields, got " + std::to_string(z.size()));
    }
    points.push_back(std::move(z));
  }
  return points;
}

std::vector<Vector> read_curve(const std::filesystem::path& path, int n_dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_curve(buf.str(), n_dim);
}

CurvePoint read_initial_point(const std::filesystem::path& path, int n_dim) {
  auto points = read_curve(path, n_dim);
  if (points.empty()) throw CurveFormatError(1, path.string() + " holds no point");
  return CurvePoint{std::move(points.front()), 0.0};
}

}  // namespace pampac
