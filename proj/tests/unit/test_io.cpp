#include <doctest.h>

#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "pampac/io/curve_io.hpp"
#include "pampac/io/dot.hpp"
#include "pampac/io/param_file.hpp"
#include "support/fixtures.hpp"

using namespace pampac;
namespace fs = std::filesystem;

namespace {

const char* kKsFile = R"(# travelling waves
N_DIM 130
LAMBDA_MIN 0.001
LAMBDA_MAX 0.1828
LAMBDA_INDEX 129
DELTA_LAMBDA -1e-5
H_MIN 1e-2
H_MAX 2000
H_INIT 100      # trailing comment
MAX_ITER 4
TOL_RESIDUAL 5e-7
MU 0.5
GAMMA 2.0

MAX_DEPTH 3
MAX_CHILDREN 3
SCALE_PROCESS_0 0.75
SCALE_PROCESS_1 1
SCALE_PROCESS_2 2
)";

std::string without(std::string text, const std::string& key) {
  const auto at = text.find(key);
  REQUIRE(at != std::string::npos);
  text.erase(at, text.find('\n', at) - at + 1);
  return text;
}

ParseError parse_error(const std::string& text) {
  try {
    parse_parameters(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("", 0, "");
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pampac_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io_cli") {
  TEST_CASE("parameter file with the KS values") {
    const RunParams p = parse_parameters(kKsFile);
    CHECK(p.n_dim == 130);
    CHECK(p.h_min == 1e-2);
    CHECK(p.h_max == 2000);
    CHECK(p.h_init == 100);
    CHECK(p.max_iter == 4);
    CHECK(p.tol_residual == 5e-7);
    CHECK(p.mu == 0.5);
    CHECK(p.gamma == 2.0);
    CHECK(p.scalings == std::vector<double>{0.75, 1.0, 2.0});
    CHECK(p.max_children == 3);
    CHECK(p.verbose == 0);
    CHECK(p.worker_budget == 39);
  }

  TEST_CASE("parameter file errors name the key and line") {
    const ParseError missing = parse_error(without(kKsFile, "TOL_RESIDUAL"));
    CHECK(missing.key() == "TOL_RESIDUAL");
    CHECK(std::string(missing.what()).find("TOL_RESIDUAL") != std::string::npos);

    const ParseError gap = parse_error(without(without(kKsFile, "SCALE_PROCESS_2"), "SCALE_PROCESS_1"));
    CHECK(gap.key() == "SCALE_PROCESS_1");

    const ParseError dup = parse_error(std::string(kKsFile) + "MU 0.4\n");
    CHECK(dup.key() == "MU");
    CHECK(dup.line() == 20);

    std::string bad_mu = kKsFile;
    bad_mu.replace(bad_mu.find("MU 0.5"), 6, "MU 1.5");
    const ParseError range = parse_error(bad_mu);
    CHECK(range.key() == "MU");
    CHECK(range.line() == 12);

    const ParseError unknown = parse_error(std::string(kKsFile) + "SPEED 3\n");
    CHECK(unknown.key() == "SPEED");
    CHECK(unknown.line() == 20);

    CHECK(parse_error(std::string(kKsFile) + "SCALE_PROCESS_3 4\n").key() == "SCALE_PROCESS_3");
    CHECK(parse_error(without(kKsFile, "MAX_ITER") + "MAX_ITER four\n").key() == "MAX_ITER");
    CHECK(parse_error(without(kKsFile, "H_MAX") + "H_MAX\n").line() == 19);
    CHECK(parse_error(without(kKsFile, "MAX_ITER") + "MAX_ITER 4 5\n").key() == "MAX_ITER");
  }

  TEST_CASE("parameter files round trip for random valid inputs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      const RunParams p = fixtures::random_params(rng);
      REQUIRE_NOTHROW(validate(p));
      CHECK(parse_parameters(serialize_parameters(p)) == p);
    }
  }

  TEST_CASE("curve points round trip bit for bit") {
    std::ostringstream out;
    write_curve_point(out, Vector{0.6, 0.8});
    const auto back = parse_curve(out.str(), 2);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == Vector{0.6, 0.8});

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = std::uniform_int_distribution<int>(1, 40)(rng);
      const int k = std::uniform_int_distribution<int>(1, 8)(rng);
      std::vector<Vector> pts(k, Vector(n));
      std::ostringstream s;
      for (auto& pt : pts) {
        for (double& v : pt) v = fixtures::random_double(rng);
        write_curve_point(s, pt);
      }
      const auto read = parse_curve(s.str(), n);
      REQUIRE(read.size() == pts.size());
      for (int i = 0; i < k; ++i) CHECK(std::memcmp(read[i].data(), pts[i].data(), n * sizeof(double)) == 0);
    }
  }

  TEST_CASE("curve format errors carry the line number") {
    try {
      parse_curve("1 2\n3\n", 2);
      FAIL("expected an error");
    } catch (const CurveFormatError& e) {
      CHECK(e.line() == 2);
    }
    try {
      parse_curve("1 2\n\n3 x\n", 2);
      FAIL("expected an error");
    } catch (const CurveFormatError& e) {
      CHECK(e.line() == 3);
    }
    CHECK(parse_curve("1 2\n3 4\n5 6", 2).size() == 3);
  }

  TEST_CASE("initial point files") {
    const fs::path dir = scratch_dir("initial");
    std::ofstream(dir / "p.txt") << "0.6 0.8\n";
    const CurvePoint p = read_initial_point(dir / "p.txt", 2);
    CHECK(p.z == Vector{0.6, 0.8});
    CHECK_THROWS(read_initial_point(dir / "p.txt", 3));
    CHECK_THROWS(read_initial_point(dir / "missing.txt", 2));
    fs::remove_all(dir);
  }

  TEST_CASE("DOT export of a single GREEN root") {
    auto root = TreeNode::make_root({0.0, 0.0}, fixtures::unit_x(), 1.0, 0.0);
    const fixtures::DotGraph g(to_dot(*root));
    CHECK(g.vertices() == 1);
    CHECK(g.edges() == 0);
    CHECK(g.fill_colors() == std::vector<std::string>{"green"});
  }

  TEST_CASE("DOT export of the width-3 depth-2 initial tree") {
    auto root = fixtures::full_initial_tree();
    const fixtures::DotGraph g(to_dot(*root, 4));
    CHECK(g.vertices() == 13);
    CHECK(g.edges() == 12);
    CHECK(std::count(g.fill_colors().begin(), g.fill_colors().end(), "red") == 12);
  }

  TEST_CASE("DOT files are gated on VERBOSE and land in the directory") {
    const fs::path dir = scratch_dir("dot");
    auto f = fixtures::pruning_example();
    CHECK_FALSE(export_dot(*f.root, 3, dir, 1));
    CHECK(fs::is_empty(dir));
    const auto path = export_dot(*f.root, 3, dir, 2);
    REQUIRE(path);
    CHECK(path->filename() == "tree_3.dot");
    std::ifstream in(*path);
    std::stringstream text;
    text << in.rdbuf();
    const fixtures::DotGraph g(text.str());
    CHECK(g.vertices() == 13);
    CHECK(g.edges() == 12);
    CHECK_THROWS(export_dot(*f.root, 3, dir / "no" / "such" / "dir", 2));
    fs::remove_all(dir);
  }

  TEST_CASE("the DOT grammar checker rejects malformed text") {
    CHECK_THROWS(fixtures::DotGraph("digraph { a -> ; }"));
    CHECK_THROWS(fixtures::DotGraph("graph { a }"));
    CHECK_THROWS(fixtures::DotGraph("digraph { a [label=\"x] }"));
    CHECK_NOTHROW(fixtures::DotGraph("digraph g { a; b; a -> b; }"));
  }
}
