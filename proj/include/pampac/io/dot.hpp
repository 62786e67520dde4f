#pragma once
// Graphviz export of the computation tree.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "pampac/tree.hpp"

namespace pampac {

/// digraph with one filled vertex per node (labelled nu, h_init, residual)
/// and parent -> child edges in child order.
std::string to_dot(const TreeNode& root, std::size_t round_index = 0);

/// Writes <dir>/tree_<round>.dot when verbose >= 2 and returns its path.
/// Throws std::runtime_error when the file cannot be written.
std::optional<std::filesystem::path> export_dot(const TreeNode& root, std::size_t round_index,
                                                const std::filesystem::path& dir, int verbose);

}  // namespace pampac
