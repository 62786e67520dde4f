#pragma once
// `KEY value` parameter files.  `#` starts a comment; blank lines are ignored.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pampac/params.hpp"

namespace pampac {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string key, int line, const std::string& message);
  const std::string& key() const noexcept { return key_; }
  /// 1-based; 0 when the problem is not tied to a line (missing key).
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

/// Parses and validates.  WORKER_BUDGET and VERBOSE are optional; the budget
/// defaults to the size of a full tree of width MAX_CHILDREN and depth MAX_DEPTH.
RunParams parse_parameters(std::string_view text);
RunParams load_parameters(const std::filesystem::path& path);

std::string serialize_parameters(const RunParams& params);

}  // namespace pampac
