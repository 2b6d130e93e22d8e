#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlscap/radii.hpp>

#include <random>

using nlscap::RadiiBounds;
using nlscap::RadiiResult;

TEST_CASE("generic contraction bounds yield a validated radius") {
  RadiiResult r = nlscap::solve_radii({1e-9, 0.01, 0.1, 10.0});
  REQUIRE(r.success);
  // Roots at ~1.1236e-9 and ~8.9e-2; first candidate 1.01 * r_minus wins.
  CHECK(r.r_minus == doctest::Approx(1.123595519802998e-9).epsilon(1e-10));
  CHECK(r.radius == doctest::Approx(1.01 * 1.123595519802998e-9).epsilon(1e-9));
  CHECK(r.radius < r.r_plus);

  RadiiResult r2 = nlscap::solve_radii({1e-10, 0.25, 0.25, 10.0});
  REQUIRE(r2.success);
  CHECK(r2.r_minus == doctest::Approx(2.000000008e-10).epsilon(1e-9));
  CHECK(r2.radius == doctest::Approx(2.02e-10).epsilon(1e-2));
}

TEST_CASE("degenerate zero-residual case picks the window midpoint") {
  RadiiResult r = nlscap::solve_radii({0.0, 0.0, 0.0, 1.0});
  REQUIRE(r.success);
  CHECK(r.radius == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("infeasible bounds are rejected") {
  CHECK(!nlscap::solve_radii({1.0, 0.0, 0.0, 1.0}).success);   // no real roots
  CHECK(!nlscap::solve_radii({1e-9, 0.6, 0.5, 1.0}).success);  // Z >= 1
  CHECK(!nlscap::solve_radii({1e-9, 0.0, 1.0, 0.5}).success);  // Z1 = 1
}

TEST_CASE("validated radius rigorously negates the polynomial") {
  std::mt19937_64 gen(12345u);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int successes = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    RadiiBounds b{U(gen) * 1e-6, U(gen) * 0.5, U(gen) * 0.5, U(gen) * 20.0};
    RadiiResult r = nlscap::solve_radii(b);
    if (!r.success) continue;
    ++successes;
    // p(radius) < 0 with exact arithmetic margin.
    double p = b.Z2 * r.radius * r.radius - (1 - b.Z0 - b.Z1) * r.radius + b.Y0;
    CHECK(p < 0.0);
    CHECK(r.radius > 0.0);
  }
  CHECK(successes > 1000);  // policy succeeds on a healthy fraction
}
