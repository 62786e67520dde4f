#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pampac/problem.hpp"
#include "pampac/problems/circle.hpp"

using namespace pampac;

namespace {

Direction dir(double a, double b) { return *Direction::from(Vector{a, b}); }

// Central differences of F, column by column.
Matrix fd_jacobian(const ProblemDefinition& p, const Vector& z, double eps) {
  const auto n = static_cast<std::size_t>(p.n_dim);
  Matrix j(n - 1, n);
  for (std::size_t c = 0; c < n; ++c) {
    Vector zp = z, zm = z;
    zp[c] += eps;
    zm[c] -= eps;
    const Vector fp = *evaluate_residual(p, zp);
    const Vector fm = *evaluate_residual(p, zm);
    for (std::size_t r = 0; r + 1 < n; ++r) j(r, c) = (fp[r] - fm[r]) / (2 * eps);
  }
  return j;
}

}  // namespace

TEST_SUITE("problem_core") {
  TEST_CASE("evaluate_residual on the circle") {
    const auto p = circle_problem();
    CHECK((*evaluate_residual(p, Vector{0.6, 0.8}))[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK((*evaluate_residual(p, Vector{0.0, 0.0}))[0] == -1.0);
    CHECK((*evaluate_residual(p, Vector{1.0, 1.0}))[0] == 1.0);
    CHECK(*evaluate_residual(p, Vector{1.0, 1.0}) == *evaluate_residual(p, Vector{1.0, 1.0}));
  }

  TEST_CASE("residual_norm on the circle") {
    const auto p = circle_problem();
    CHECK(*residual_norm(p, Vector{0.6, 0.8}) <= 1e-15);
    CHECK(*residual_norm(p, Vector{0.0, 0.0}) == 1.0);
    CHECK(*residual_norm(p, Vector{1.0, 1.0}) == 1.0);
  }

  TEST_CASE("contract violations and evaluation failures") {
    const auto p = circle_problem();
    CHECK_THROWS_AS(evaluate_residual(p, Vector{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_residual(p, Vector{1.0, 2.0, 3.0}), std::invalid_argument);

    ProblemDefinition bad = p;
    bad.residual = [](std::span<const double>) { return Vector{1.0, 2.0}; };
    CHECK_THROWS_AS(evaluate_residual(bad, Vector{0.0, 0.0}), std::logic_error);

    ProblemDefinition nan = p;
    nan.residual = [](std::span<const double>) { return Vector{std::numeric_limits<double>::quiet_NaN()}; };
    CHECK_FALSE(evaluate_residual(nan, Vector{0.0, 0.0}));
    CHECK_FALSE(residual_norm(nan, Vector{0.0, 0.0}));
  }

  TEST_CASE("bordered step: exact solution is a fixed point") {
    const auto p = circle_problem();
    const Vector z{0.6, 0.8};
    const auto out = bordered_newton_step(p, z, dir(-0.8, 0.6), z, 0.0);
    REQUIRE(out);
    CHECK(*out == z);
  }

  TEST_CASE("bordered step from the predictor (1, 0.1)") {
    // F_z = (2, 0.2), F = 0.01, row T = (0, 1) with zero offset:
    // d_lambda = 0 and 2 d_x = -0.01, so the step lands on (0.995, 0.1).
    const auto p = circle_problem();
    const auto out = bordered_newton_step(p, Vector{1.0, 0.1}, dir(0, 1), Vector{1.0, 0.0}, 0.1);
    REQUIRE(out);
    CHECK((*out)[0] == doctest::Approx(0.995).epsilon(1e-15));
    CHECK((*out)[1] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(std::hypot((*out)[0] - 0.99499, (*out)[1] - 0.1) <= 1e-3);
  }

  TEST_CASE("bordered step: zero right-hand side leaves the input unchanged") {
    const auto p = circle_problem();
    const Vector z{0.0, 1.0};
    REQUIRE(*residual_norm(p, z) == 0.0);
    const auto out = bordered_newton_step(p, z, dir(0.3, -0.4), z, 0.0);
    REQUIRE(out);
    CHECK(*out == z);
  }

  TEST_CASE("bordered step: singular system and missing Jacobian") {
    const auto p = circle_problem();
    CHECK_FALSE(bordered_newton_step(p, Vector{0.0, 0.0}, dir(1, 0), Vector{0.0, 0.0}, 0.1));
    ProblemDefinition nojac = p;
    nojac.jacobian = nullptr;
    CHECK_THROWS_AS(bordered_newton_step(nojac, Vector{1.0, 0.0}, dir(1, 0), Vector{1.0, 0.0}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(bordered_newton_step(p, Vector{1.0}, dir(1, 0), Vector{1.0, 0.0}, 0.0), std::invalid_argument);
  }

  TEST_CASE("bordered step keeps the hyperplane constraint and contracts near the curve") {
    const auto p = circle_problem();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 2 * M_PI), off(-0.05, 0.05), hs(-0.05, 0.05);
    int contracted = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const double a = angle(rng);
      const Vector base{std::cos(a), std::sin(a)};
      const Direction t = dir(-std::sin(a) + off(rng), std::cos(a) + off(rng));
      const double h = hs(rng);
      // Predictor on the hyperplane, displaced by at most 0.05 from the curve.
      Vector zeta = base;
      for (std::size_t i = 0; i < 2; ++i) zeta[i] += h * t[i];
      const double before = *residual_norm(p, zeta);
      const auto out = bordered_newton_step(p, zeta, t, base, h);
      REQUIRE(out);
      const double g = t[0] * ((*out)[0] - base[0]) + t[1] * ((*out)[1] - base[1]) - h;
      CHECK(std::abs(g) <= 1e-10);
      const double after = *residual_norm(p, *out);
      if (after <= 0.5 * before || after <= 1e-15) ++contracted;
    }
    CHECK(contracted == 500);
  }

  TEST_CASE("circle Jacobian matches central differences") {
    const auto p = circle_problem();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 50; ++trial) {
      const Vector z{u(rng), u(rng)};
      const Matrix j = p.jacobian(z);
      const Matrix f = fd_jacobian(p, z, 1e-6);
      for (std::size_t c = 0; c < 2; ++c) {
        CHECK(std::abs(j(0, c) - f(0, c)) <= 1e-5 * std::max(1.0, std::abs(j(0, c))));
      }
    }
  }

  TEST_CASE("Direction normalises and rejects degenerate vectors") {
    const auto d = Direction::from(Vector{3.0, 4.0});
    REQUIRE(d);
    CHECK((*d)[0] == doctest::Approx(0.6));
    CHECK((*d)[1] == doctest::Approx(0.8));
    CHECK_FALSE(Direction::from(Vector{0.0, 1e-15}));
    CHECK_FALSE(Direction::from(Vector{std::numeric_limits<double>::infinity(), 0.0}));

    const auto s = Direction::secant(Vector{0.0, 0.0}, Vector{3.0, 4.0});
    REQUIRE(s);
    CHECK((*s)[0] == doctest::Approx(0.6));
    CHECK_FALSE(Direction::secant(Vector{1.0, 1.0}, Vector{1.0, 1.0}));

    // 0.2 / sqrt(0.0404) and 0.02 / sqrt(0.0404)
    const auto s2 = Direction::secant(Vector{0.0, -1.0}, Vector{0.2, -0.98});
    REQUIRE(s2);
    CHECK((*s2)[0] == doctest::Approx(0.9950371902).epsilon(1e-9));
    CHECK((*s2)[1] == doctest::Approx(0.0995037190).epsilon(1e-9));

    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
      Vector v(1 + trial % 40);
      for (auto& x : v) x = g(rng) * std::pow(10.0, trial % 7 - 3);
      const auto u = Direction::from(v);
      REQUIRE(u);
      double n2 = 0;
      for (double x : u->values()) n2 += x * x;
      CHECK(std::abs(std::sqrt(n2) - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("corrector_step validates the stepper output") {
    ProblemDefinition p = circle_problem();
    p.corrector = [](std::span<const double>, const Direction&, std::span<const double>, double) {
      return std::optional<Vector>(Vector{1.0});
    };
    CHECK_THROWS_AS(corrector_step(p, Vector{1.0, 0.0}, dir(0, 1), Vector{1.0, 0.0}, 0.1), std::logic_error);
    p.corrector = [](std::span<const double>, const Direction&, std::span<const double>, double) {
      return std::optional<Vector>(Vector{std::nan(""), 0.0});
    };
    CHECK_FALSE(corrector_step(p, Vector{1.0, 0.0}, dir(0, 1), Vector{1.0, 0.0}, 0.1));
  }

  TEST_CASE("validate rejects malformed definitions") {
    ProblemDefinition p = circle_problem();
    CHECK_NOTHROW(validate(p));
    p.lambda_index = 2;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = circle_problem();
    p.corrector = nullptr;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
  }
}
