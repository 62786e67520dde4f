#include "pampac/io/param_file.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace pampac {

ParseError::ParseError(std::string key, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + key + ": " + message
                                  : key + ": " + message),
      key_(std::move(key)),
      line_(line) {}

namespace {

enum class Kind { integer, real };

struct KeySpec {
  std::string_view name;
  Kind kind;
  bool required;
};

constexpr std::array<KeySpec, 16> kKeys{{
    {"N_DIM", Kind::integer, true},
    {"LAMBDA_MIN", Kind::real, true},
    {"LAMBDA_MAX", Kind::real, true},
    {"LAMBDA_INDEX", Kind::integer, true},
    {"DELTA_LAMBDA", Kind::real, true},
    {"H_MIN", Kind::real, true},
    {"H_MAX", Kind::real, true},
    {"H_INIT", Kind::real, true},
    {"MAX_ITER", Kind::integer, true},
    {"TOL_RESIDUAL", Kind::real, true},
    {"MU", Kind::real, true},
    {"GAMMA", Kind::real, true},
    {"MAX_DEPTH", Kind::integer, true},
    {"MAX_CHILDREN", Kind::integer, true},
    {"VERBOSE", Kind::integer, false},
    {"WORKER_BUDGET", Kind::integer, false},
}};

constexpr std::string_view kScalePrefix = "SCALE_PROCESS_";

struct Entry {
  double value;
  int line;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string_view strip_plus(std::string_view token) {
  return token.size() > 1 && token.front() == '+' ? token.substr(1) : token;
}

double parse_real(std::string_view key, std::string_view token, int line) {
  token = strip_plus(token);
  double v = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(std::string(key), line, "not a finite number: '" + std::string(token) + "'");
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view token, int line) {
  token = strip_plus(token);
  long long v = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(std::string(key), line, "not an integer: '" + std::string(token) + "'");
  }
  return v;
}

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : kKeys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

}  // namespace

RunParams parse_parameters(std::string_view text) {
  std::map<std::string, Entry, std::less<>> values;
  std::map<int, Entry> scales;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) throw ParseError(std::string(line), line_no, "missing value");
    const std::string_view key = line.substr(0, split);
    const std::string_view rest = trim(line.substr(split));
    if (rest.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError(std::string(key), line_no, "expected a single value");
    }

    if (key.starts_with(kScalePrefix)) {
      const std::string_view index = key.substr(kScalePrefix.size());
      const long long k = parse_integer(key, index, line_no);
      if (k < 0 || index.empty() || (index.size() > 1 && index.front() == '0')) {
        throw ParseError(std::string(key), line_no, "bad scaling index");
      }
      const double v = parse_real(key, rest, line_no);
      if (!scales.emplace(static_cast<int>(k), Entry{v, line_no}).second) {
        throw ParseError(std::string(key), line_no, "duplicate key");
      }
      continue;
    }

    const KeySpec* spec = find_key(key);
    if (spec == nullptr) throw ParseError(std::string(key), line_no, "unknown key");
    const double v = spec->kind == Kind::integer ? static_cast<double>(parse_integer(key, rest, line_no))
                                                 : parse_real(key, rest, line_no);
    if (!values.emplace(std::string(key), Entry{v, line_no}).second) {
      throw ParseError(std::string(key), line_no, "duplicate key");
    }
  }

  for (const auto& k : kKeys) {
    if (k.required && !values.contains(k.name)) throw ParseError(std::string(k.name), 0, "missing mandatory key");
  }

  auto real = [&](std::string_view k) { return values.find(k)->second.value; };
  auto integer = [&](std::string_view k) { return static_cast<int>(values.find(k)->second.value); };
  auto line_of = [&](std::string_view k) {
    const auto it = values.find(k);
    return it == values.end() ? 0 : it->second.line;
  };

  RunParams p;
  p.n_dim = integer("N_DIM");
  p.lambda_min = real("LAMBDA_MIN");
  p.lambda_max = real("LAMBDA_MAX");
  p.lambda_index = integer("LAMBDA_INDEX");
  p.delta_lambda = real("DELTA_LAMBDA");
  p.h_min = real("H_MIN");
  p.h_max = real("H_MAX");
  p.h_init = real("H_INIT");
  p.max_iter = integer("MAX_ITER");
  p.tol_residual = real("TOL_RESIDUAL");
  p.mu = real("MU");
  p.gamma = real("GAMMA");
  p.max_depth = integer("MAX_DEPTH");
  p.max_children = integer("MAX_CHILDREN");
  p.verbose = values.contains("VERBOSE") ? integer("VERBOSE") : 0;

  const int width = p.max_children;
  for (int k = 0; k < std::max(width, 0); ++k) {
    const auto it = scales.find(k);
    const std::string key = std::string(kScalePrefix) + std::to_string(k);
    if (it == scales.end()) throw ParseError(key, 0, "missing (MAX_CHILDREN is " + std::to_string(width) + ")");
    p.scalings.push_back(it->second.value);
  }
  if (!scales.empty() && scales.rbegin()->first >= width) {
    const auto& [k, e] = *scales.rbegin();
    throw ParseError(std::string(kScalePrefix) + std::to_string(k), e.line, "index exceeds MAX_CHILDREN - 1");
  }

  p.worker_budget = values.contains("WORKER_BUDGET")
                        ? integer("WORKER_BUDGET")
                        : (p.max_children > 0 && p.max_depth > 0 ? full_tree_budget(p.max_children, p.max_depth) : 0);

  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const std::string key = what.substr(0, what.find(':'));
    int line = line_of(key);
    if (key.starts_with(kScalePrefix)) {
      const auto it = scales.find(std::stoi(key.substr(kScalePrefix.size())));
      if (it != scales.end()) line = it->second.line;
    }
    throw ParseError(key, line, what.substr(what.find(':') + 2));
  }
  return p;
}

RunParams load_parameters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_parameters(buf.str());
}

std::string serialize_parameters(const RunParams& p) {
  std::ostringstream out;
  out.precision(17);
  out << "N_DIM " << p.n_dim << '\n'
      << "LAMBDA_MIN " << p.lambda_min << '\n'
      << "LAMBDA_MAX " << p.lambda_max << '\n'
      << "LAMBDA_INDEX " << p.lambda_index << '\n'
      << "DELTA_LAMBDA " << p.delta_lambda << '\n'
      << "H_MIN " << p.h_min << '\n'
      << "H_MAX " << p.h_max << '\n'
      << "H_INIT " << p.h_init << '\n'
      << "MAX_ITER " << p.max_iter << '\n'
      << "TOL_RESIDUAL " << p.tol_residual << '\n'
      << "MU " << p.mu << '\n'
      << "GAMMA " << p.gamma << '\n'
      << "MAX_DEPTH " << p.max_depth << '\n'
      << "MAX_CHILDREN " << p.max_children << '\n';
  for (std::size_t k = 0; k < p.scalings.size(); ++k) out << kScalePrefix << k << ' ' << p.scalings[k] << '\n';
  out << "VERBOSE " << p.verbose << '\n' << "WORKER_BUDGET " << p.worker_budget << '\n';
  return out.str();
}

}  // namespace pampac
