#include "pampac/io/dot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace pampac {
namespace {

std::string font_color(Color c) { return c == Color::black ? "white" : "black"; }

void emit(const TreeNode& node, std::size_t& next_id, std::ostringstream& out) {
  const std::size_t id = next_id++;
  char label[160];
  std::snprintf(label, sizeof label, "nu=%d\\nh=%.6g\\nr=%.3e", node.nu, node.h_init, node.residual_norm_current);
  out << "  n" << id << " [label=\"" << label << "\", fillcolor=" << color_name(node.color)
      << ", fontcolor=" << font_color(node.color) << "];\n";
  for (const auto& child : node.children) {
    const std::size_t child_id = next_id;
    emit(*child, next_id, out);
    out << "  n" << id << " -> n" << child_id << ";\n";
  }
}

}  // namespace

std::string to_dot(const TreeNode& root, std::size_t round_index) {
  std::ostringstream out;
  out << "digraph tree_" << round_index << " {\n"
      << "  node [shape=circle, style=filled];\n";
  std::size_t next_id = 0;
  emit(root, next_id, out);
  out << "}\n";
  return out.str();
}

std::optional<std::filesystem::path> export_dot(const TreeNode& root, std::size_t round_index,
                                                const std::filesystem::path& dir, int verbose) {
  if (verbose < 2) return std::nullopt;
  const auto path = dir / ("tree_" + std::to_string(round_index) + ".dot");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_dot(root, round_index);
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return path;
}

}  // namespace pampac
