#pragma once
// Hand-built trees, a DOT grammar checker and random inputs shared by the
// unit and acceptance tests.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pampac/params.hpp"
#include "pampac/tree.hpp"

namespace fixtures {

using pampac::Color;
using pampac::Direction;
using pampac::TreeNode;

inline Direction unit_x() { return *Direction::from(std::vector<double>{1.0, 0.0}); }

inline TreeNode& add(TreeNode& parent, double h_init, int nu_init, int nu, Color color) {
  auto child = std::make_unique<TreeNode>(parent.zeta, unit_x(), h_init, nu_init, h_init);
  child->nu = nu;
  child->color = color;
  if (nu > 0) child->residual_norm_previous = 1.0;
  return parent.add_child(std::move(child));
}

/// Root with W = 3 children and 9 grandchildren, all RED, before any corrector step.
inline std::unique_ptr<TreeNode> full_initial_tree(double h = 1.0) {
  const double t[3] = {0.75, 1.0, 2.0};
  auto root = TreeNode::make_root({0.0, 0.0}, unit_x(), h, 0.0);
  for (double a : t) {
    TreeNode& child = add(*root, a * h, 0, 1, Color::red);
    for (double b : t) add(child, b * a * h, 1, 0, Color::red);
  }
  return root;
}

struct PruningExample {
  static constexpr double t1 = 0.25;
  static constexpr double t2 = 1.0;
  static constexpr double t3 = 1.5;

  std::unique_ptr<TreeNode> root;
  TreeNode* a = nullptr;   // subtree 1, seeded with t1 h
  TreeNode* a1 = nullptr;  // GREEN, t1 t1 h
  TreeNode* a2 = nullptr;  // GREEN, t2 t1 h
  TreeNode* a3 = nullptr;  // YELLOW, t3 t1 h
  TreeNode* b = nullptr;   // subtree 2, seeded with t2 h
  TreeNode* b1 = nullptr;  // YELLOW
  TreeNode* b2 = nullptr;  // RED
  TreeNode* b3 = nullptr;  // RED
  TreeNode* c = nullptr;   // subtree 3, BLACK with three BLACK children
};

/// Colours and iteration counts of the worked pruning example: four GREEN,
/// two YELLOW, two RED and four BLACK nodes below a GREEN root.
inline PruningExample pruning_example(double h = 1.0) {
  PruningExample f;
  f.root = TreeNode::make_root({0.0, 0.0}, unit_x(), h, 0.0);
  f.root->h_init = h;
  f.root->nu = 2;
  f.a = &add(*f.root, PruningExample::t1 * h, 1, 2, Color::green);
  f.a1 = &add(*f.a, PruningExample::t1 * PruningExample::t1 * h, 1, 1, Color::green);
  f.a2 = &add(*f.a, PruningExample::t2 * PruningExample::t1 * h, 1, 1, Color::green);
  f.a3 = &add(*f.a, PruningExample::t3 * PruningExample::t1 * h, 1, 1, Color::yellow);
  f.b = &add(*f.root, PruningExample::t2 * h, 1, 2, Color::green);
  f.b1 = &add(*f.b, PruningExample::t1 * h, 1, 1, Color::yellow);
  f.b2 = &add(*f.b, PruningExample::t2 * h, 1, 1, Color::red);
  f.b3 = &add(*f.b, PruningExample::t3 * h, 1, 1, Color::red);
  f.c = &add(*f.root, PruningExample::t3 * h, 1, 2, Color::black);
  for (double t : {PruningExample::t1, PruningExample::t2, PruningExample::t3}) add(*f.c, t * PruningExample::t3 * h, 2, 1, Color::black);
  return f;
}

inline pampac::RunParams pruning_params() {
  pampac::RunParams p;
  p.n_dim = 2;
  p.lambda_index = 1;
  p.lambda_min = 0.0;
  p.lambda_max = 1.0;
  p.delta_lambda = 0.01;
  p.h_min = 1e-3;
  p.h_max = 10.0;
  p.h_init = 1.0;
  p.max_iter = 4;
  p.tol_residual = 5e-7;
  p.mu = 0.5;
  p.gamma = 2.0;
  p.max_depth = 2;
  p.max_children = 3;
  p.scalings = {PruningExample::t1, PruningExample::t2, PruningExample::t3};
  p.worker_budget = 12;
  return p;
}

inline std::size_t count_color(const TreeNode& n, Color c) {
  std::size_t k = n.color == c ? 1 : 0;
  for (const auto& ch : n.children) k += count_color(*ch, c);
  return k;
}

/// Recursive-descent check of the digraph subset emitted by the exporter:
///   graph  := 'digraph' ID? '{' stmt* '}'
///   stmt   := (ID ('->' ID)* attrs? | ('node'|'edge'|'graph') attrs) ';'?
///   attrs  := '[' (ID '=' ID (','|';')?)* ']'
/// where ID is an identifier, a number or a quoted string.
class DotGraph {
 public:
  explicit DotGraph(std::string_view text) : s_(text) { parse(); }

  std::size_t vertices() const { return vertices_.size(); }
  std::size_t edges() const { return edges_; }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const std::vector<std::string>& fill_colors() const { return fills_; }

 private:
  void fail(const std::string& what) const {
    throw std::runtime_error("DOT syntax error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  bool peek_id() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '"' || c == '_' || c == '-' || c == '.' || std::isalnum(static_cast<unsigned char>(c));
  }
  std::string id() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == '"') {
      std::string out;
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) out += s_[pos_++];
        out += s_[pos_++];
      }
      if (pos_ >= s_.size()) fail("unterminated string");
      ++pos_;
      return out;
    }
    const std::size_t start = pos_;
    if (s_[pos_] == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') fail("edge operator where ID expected");
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || (c == '-' && pos_ == start))) break;
      ++pos_;
    }
    if (pos_ == start) fail("expected ID");
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string attrs() {
    std::string fill;
    while (!accept("]")) {
      const std::string key = id();
      expect("=");
      const std::string value = id();
      if (key == "fillcolor") fill = value;
      if (!accept(",")) accept(";");
    }
    return fill;
  }
  void parse() {
    expect("digraph");
    if (peek_id()) id();
    expect("{");
    while (!accept("}")) {
      const std::string head = id();
      if (head == "node" || head == "edge" || head == "graph") {
        expect("[");
        attrs();
      } else if (accept("->")) {
        id();
        ++edges_;
        while (accept("->")) {
          id();
          ++edges_;
        }
        if (accept("[")) attrs();
      } else {
        vertices_.push_back(head);
        fills_.push_back(accept("[") ? attrs() : std::string());
      }
      accept(";");
    }
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> vertices_;
  std::vector<std::string> fills_;
  std::size_t edges_ = 0;
};

/// Doubles spread over many binades, including subnormal-free tiny and large magnitudes.
inline double random_double(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> exp(-30, 30);
  return std::ldexp(mant(rng), exp(rng));
}

/// Random parameters satisfying every RunParams invariant.
inline pampac::RunParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> small(1, 6);
  pampac::RunParams p;
  p.n_dim = std::uniform_int_distribution<int>(2, 2050)(rng);
  p.lambda_index = std::uniform_int_distribution<int>(0, p.n_dim - 1)(rng);
  p.lambda_min = random_double(rng);
  p.lambda_max = p.lambda_min + std::ldexp(0.5 + u(rng), std::uniform_int_distribution<int>(-10, 10)(rng));
  p.delta_lambda = (u(rng) < 0.5 ? -1.0 : 1.0) * std::ldexp(0.5 + u(rng), -std::uniform_int_distribution<int>(1, 20)(rng));
  p.h_min = std::ldexp(0.5 + u(rng), -std::uniform_int_distribution<int>(5, 30)(rng));
  p.h_max = p.h_min * (1.0 + 1e6 * u(rng));
  p.h_init = (u(rng) < 0.5 ? -1.0 : 1.0) * (p.h_min + (p.h_max - p.h_min) * u(rng));
  p.max_iter = small(rng);
  p.tol_residual = std::ldexp(0.5 + u(rng), -std::uniform_int_distribution<int>(10, 40)(rng));
  p.mu = 0.01 + 0.98 * u(rng);
  p.gamma = 1.0 + 1e-3 + 3.0 * u(rng);
  p.max_depth = small(rng);
  p.max_children = small(rng);
  for (int k = 0; k < p.max_children; ++k) p.scalings.push_back(0.05 + 4.0 * u(rng));
  p.verbose = std::uniform_int_distribution<int>(0, 3)(rng);
  p.worker_budget = std::uniform_int_distribution<int>(1, 64)(rng);
  return p;
}

}  // namespace fixtures
