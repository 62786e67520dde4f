#include "pampac/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pampac/kernels.hpp"

namespace pampac {

std::string_view color_name(Color c) {
  switch (c) {
    case Color::green: return "green";
    case Color::yellow: return "yellow";
    case Color::red: return "red";
    case Color::black: return "black";
  }
  return "unknown";
}

TreeNode::TreeNode(Vector z_init_, Direction t_init_, double h_init_, int nu_init_, double h_base_)
    : zeta(z_init_), nu_init(nu_init_), z_init(std::move(z_init_)), t_init(std::move(t_init_)),
      h_init(h_init_), h_base(h_base_) {
  if (t_init.size() != z_init.size()) throw std::invalid_argument("TreeNode: direction length mismatch");
  kernels::axpy(h_init, t_init.values(), zeta);
}

std::unique_ptr<TreeNode> TreeNode::make_root(Vector z, Direction tangent, double h_base, double residual_norm) {
  auto root = std::make_unique<TreeNode>(std::move(z), std::move(tangent), 0.0, 0, h_base);
  root->color = Color::green;
  root->residual_norm_current = residual_norm;
  return root;
}

TreeNode& TreeNode::add_child(std::unique_ptr<TreeNode> child) {
  children.push_back(std::move(child));
  return *children.back();
}

std::size_t TreeNode::subtree_size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c->subtree_size();
  return n;
}

Color classify(int nu, double residual, std::optional<double> residual_previous, const RunParams& params) {
  if (residual <= params.tol_residual) return Color::green;
  if (std::pow(residual, params.gamma) <= params.tol_residual) return Color::yellow;
  if (nu > params.max_iter) return Color::black;
  if (nu >= 1 && residual_previous && residual > params.mu * *residual_previous) return Color::black;
  if (!std::isfinite(residual)) return Color::black;
  return Color::red;
}

bool yellow_stalled(int nu, double residual, std::optional<double> residual_previous, const RunParams& params) {
  return nu > params.max_iter && residual_previous && !(residual < *residual_previous);
}

Color assign_color(const TreeNode& node, const RunParams& params) {
  return classify(node.nu, node.residual_norm_current, node.residual_norm_previous, params);
}

std::optional<Direction> secant_direction(const TreeNode& node) {
  return Direction::secant(node.z_init, node.zeta);
}

namespace {

bool is_green_or_yellow(Color c) { return c == Color::green || c == Color::yellow; }

PathMetrics extend(const TreeNode& head, const PathMetrics* tail) {
  PathMetrics p;
  p.length = std::abs(head.h_init);
  p.cost = head.nu;
  p.nodes.push_back(&head);
  if (tail != nullptr) {
    const TreeNode& next = *tail->nodes.front();
    p.length += tail->length;
    p.cost = std::max(head.nu, tail->cost + next.nu_init);
    p.nodes.insert(p.nodes.end(), tail->nodes.begin(), tail->nodes.end());
  }
  return p;
}

// First maximum in child order.
const PathMetrics* longest(const std::vector<PathMetrics>& candidates) {
  const PathMetrics* best = nullptr;
  for (const auto& c : candidates) {
    if (best == nullptr || c.length > best->length) best = &c;
  }
  return best;
}

double rate(double length, int denominator) {
  return denominator == 0 ? std::numeric_limits<double>::infinity() : length / denominator;
}

}  // namespace

PathPair compute_paths(const TreeNode& node) {
  PathPair out;
  if (!is_green_or_yellow(node.color)) return out;

  std::vector<PathMetrics> child_viable;
  std::vector<PathMetrics> child_valid;
  bool has_gy_child = false;
  for (const auto& child : node.children) {
    if (!is_green_or_yellow(child->color)) continue;
    has_gy_child = true;
    PathPair sub = compute_paths(*child);
    if (sub.viable) child_viable.push_back(std::move(*sub.viable));
    if (child->color == Color::green && sub.valid) child_valid.push_back(std::move(*sub.valid));
  }

  out.viable = extend(node, longest(child_viable));
  if (node.color == Color::green) {
    if (!has_gy_child) {
      out.valid = extend(node, nullptr);
    } else if (const PathMetrics* tail = longest(child_valid)) {
      out.valid = extend(node, tail);
    }
  }
  return out;
}

const PathMetrics& choose_best_path(const PathMetrics& valid, const PathMetrics& viable) {
  return rate(valid.length, valid.cost) >= rate(viable.length, viable.cost + 1) ? valid : viable;
}

std::optional<PathMetrics> best_path(const PathPair& paths) {
  if (paths.valid && paths.viable) return choose_best_path(*paths.valid, *paths.viable);
  if (paths.valid) return paths.valid;
  return paths.viable;
}

void remove_black_subtrees(TreeNode& node, PruneReport& report) {
  if (node.children.empty()) return;
  const std::size_t before = node.children.size();
  std::erase_if(node.children, [&](const std::unique_ptr<TreeNode>& c) {
    if (c->color != Color::black) return false;
    report.removed_black += c->subtree_size();
    return true;
  });
  if (before > 0 && node.children.empty()) report.exhausted.push_back(&node);
  for (auto& c : node.children) remove_black_subtrees(*c, report);
}

void remove_redundant_paths(TreeNode& node, PruneReport& report) {
  for (auto& c : node.children) remove_redundant_paths(*c, report);
  const std::optional<PathMetrics> best = best_path(compute_paths(node));
  const TreeNode* keep = (best && best->nodes.size() > 1) ? best->nodes[1] : nullptr;
  std::erase_if(node.children, [&](const std::unique_ptr<TreeNode>& c) {
    if (!is_green_or_yellow(c->color) || c.get() == keep) return false;
    report.removed_redundant += c->subtree_size();
    return true;
  });
}

namespace {

void collect(const TreeNode& node, std::vector<const TreeNode*>& out) {
  out.push_back(&node);
  for (const auto& c : node.children) collect(*c, out);
}

}  // namespace

PruneReport prune_tree(TreeNode& root, [[maybe_unused]] const RunParams& params) {
  PruneReport report;
  remove_black_subtrees(root, report);
  remove_redundant_paths(root, report);
  std::vector<const TreeNode*> live;
  collect(root, live);
  std::sort(live.begin(), live.end());
  std::erase_if(report.exhausted,
                [&](const TreeNode* n) { return !std::binary_search(live.begin(), live.end(), n); });
  return report;
}

void reduce_base_step(TreeNode& node, std::span<const double> scalings) {
  if (scalings.empty()) throw std::invalid_argument("reduce_base_step: no scalings");
  const auto [lo, hi] = std::minmax_element(scalings.begin(), scalings.end());
  node.h_base *= 0.9 * *lo / *hi;
}

}  // namespace pampac
