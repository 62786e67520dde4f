#pragma once
// The rooted tree of speculative corrector sequences.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pampac/params.hpp"
#include "pampac/problem.hpp"

namespace pampac {

enum class Color { green, yellow, red, black };

std::string_view color_name(Color c);

struct TreeNode {
  /// A fresh RED node with zeta = z_init + h_init * t_init and nu = 0.
  TreeNode(Vector z_init, Direction t_init, double h_init, int nu_init, double h_base);

  /// A converged node used as the tree root.
  static std::unique_ptr<TreeNode> make_root(Vector z, Direction tangent, double h_base, double residual_norm);

  Vector zeta;
  int nu = 0;
  int nu_init = 0;
  Vector z_init;
  Direction t_init;
  double h_init = 0.0;
  double h_base = 0.0;
  Color color = Color::red;
  double residual_norm_current = 0.0;
  std::optional<double> residual_norm_previous;
  std::vector<std::unique_ptr<TreeNode>> children;

  TreeNode& add_child(std::unique_ptr<TreeNode> child);
  bool is_leaf() const noexcept { return children.empty(); }
  std::size_t subtree_size() const;
};

struct PathMetrics {
  double length = 0.0;  // L(P)
  int cost = 0;         // I(P)
  std::vector<const TreeNode*> nodes;
};

struct PathPair {
  std::optional<PathMetrics> valid;   // all GREEN
  std::optional<PathMetrics> viable;  // GREEN or YELLOW
};

/// Colouring rules applied in order GREEN, YELLOW, BLACK, RED.
Color classify(int nu, double residual, std::optional<double> residual_previous, const RunParams& params);
Color assign_color(const TreeNode& node, const RunParams& params);
/// A YELLOW iterate past MAX_ITER whose residual stopped decreasing; callers treat it as BLACK.
bool yellow_stalled(int nu, double residual, std::optional<double> residual_previous, const RunParams& params);

/// Unit vector along zeta - z_init; nullopt when the displacement vanishes.
std::optional<Direction> secant_direction(const TreeNode& node);

PathPair compute_paths(const TreeNode& node);

/// Keeps valid iff L_valid / I_valid >= L_viable / (I_viable + 1); a zero
/// denominator counts as an infinite rate.
const PathMetrics& choose_best_path(const PathMetrics& valid, const PathMetrics& viable);

/// The preferred path of a node, or nullopt when it has neither.
std::optional<PathMetrics> best_path(const PathPair& paths);

struct PruneReport {
  std::size_t removed_black = 0;      // nodes, including descendants
  std::size_t removed_redundant = 0;  // nodes, including descendants
  /// Nodes that had children, lost every one of them to stage 1 and are
  /// still in the tree after stage 2.
  std::vector<TreeNode*> exhausted;
};

/// Stage 1 of prune_tree.
void remove_black_subtrees(TreeNode& root, PruneReport& report);
/// Stage 2 of prune_tree, a single post-order pass.
void remove_redundant_paths(TreeNode& root, PruneReport& report);

/// Stage 1 removes BLACK subtrees; stage 2 keeps only the best-path member
/// among each node's GREEN/YELLOW children.  RED children survive stage 2.
PruneReport prune_tree(TreeNode& root, const RunParams& params);

/// h_base <- 0.9 * min(scalings) / max(scalings) * h_base.
void reduce_base_step(TreeNode& node, std::span<const double> scalings);

}  // namespace pampac
