// Tests for the validated local unstable manifold: the power-series
// parameterization P(sigma) = sum_m p_m sigma^m of the one-dimensional
// unstable manifold attached to a validated equilibrium, together with a
// uniform enclosure radius on the closed unit disk.
//
// Frozen reference coefficients come from an independent solver (numpy:
// polish the same frozen seed, eigendecompose the linearization, run the
// order-by-order recurrence with plain LU solves) and pin the scaling
// convention, the recurrence, and the endpoint values.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlscap/equilibria.hpp>
#include <nlscap/manifold.hpp>

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

using namespace nlscap;
using cplx = std::complex<double>;

namespace {

std::string seed_path(const std::string& name) {
  return std::string(NLSCAP_SOURCE_DIR) + "/data/seeds/" + name;
}

const EquilibriumResult& eq_u1i() {
  static const EquilibriumResult res = [] {
    EquilibriumInput in;
    in.seed = read_seed(seed_path("u1i.seq"));
    in.modes = 28;
    EquilibriumResult r = validate_equilibrium(in);
    REQUIRE_MESSAGE(r.success, r.message);
    return r;
  }();
  return res;
}

const ManifoldResult& full_u1i() {
  static const ManifoldResult res = [] {
    ManifoldResult r = validate_manifold(manifold_input(eq_u1i(), 27, 150));
    REQUIRE_MESSAGE(r.success, r.message);
    return r;
  }();
  return res;
}

double nu_norm_mid(const std::vector<CInterval>& v) {
  double s = 0.0;
  for (size_t k = 0; k < v.size(); ++k) {
    double re = 0.5 * (v[k].re.lo + v[k].re.hi);
    double im = 0.5 * (v[k].im.lo + v[k].im.hi);
    s += (k == 0 ? 1.0 : 2.0) * std::hypot(re, im);
  }
  return s;
}

cplx mid(const CInterval& z) {
  return {0.5 * (z.re.lo + z.re.hi), 0.5 * (z.im.lo + z.im.hi)};
}

}  // namespace

TEST_CASE("first orders carry the equilibrium and the scaled eigenvector") {
  // Ten orders cannot absorb the full eigenvector scale rigorously (the
  // neglected orders still carry mass), but the series itself is exact.
  ManifoldInput in = manifold_input(eq_u1i(), 27, 10);
  ManifoldResult r = validate_manifold(in);
  REQUIRE(r.p.size() == 11);
  REQUIRE(r.p[0].size() == 28);

  for (int k = 0; k <= 27; ++k) CHECK(r.p[0][size_t(k)] == eq_u1i().a[size_t(k)]);

  // one-sided l2 norm of the first-order data is the requested 20
  double l2 = 0.0;
  for (const cplx& z : r.p[1]) l2 += std::norm(z);
  l2 = std::sqrt(l2);
  CHECK(std::abs(l2 - 20.0) <= 1e-9);

  // the pinned eigenvector coefficient carries the scale itself
  CHECK(std::abs(r.p[1][0] - cplx(15.999134598276841, 0.0)) <= 2e-8);
  CHECK(r.scale == doctest::Approx(15.999134598276841).epsilon(1e-9));
}

TEST_CASE("power-series coefficients match an independent solver") {
  ManifoldResult r = validate_manifold(manifold_input(eq_u1i(), 27, 10));
  REQUIRE(r.p.size() == 11);
  const cplx p2_0(1.0053010679987221e+01, 6.4034340496776627e+00);
  const cplx p2_5(-8.5226060220744328e-03, -5.0987931929200652e-03);
  const cplx p3_1(-4.9008549641858714e+00, -4.5385926860570605e+00);
  const cplx p10_3(3.1769873424362671e-01, 7.4061819584921071e-02);
  CHECK(std::abs(r.p[2][0] - p2_0) <= 1e-8 * std::abs(p2_0));
  CHECK(std::abs(r.p[2][5] - p2_5) <= 1e-8 * std::abs(p2_5));
  CHECK(std::abs(r.p[3][1] - p3_1) <= 1e-8 * std::abs(p3_1));
  CHECK(std::abs(r.p[10][3] - p10_3) <= 1e-8 * std::abs(p10_3));
}

TEST_CASE("rotating the eigenvector direction rotates each order") {
  const double theta = 0.5;
  ManifoldResult r0 = validate_manifold(manifold_input(eq_u1i(), 27, 8, 20.0, 0.0));
  ManifoldResult rt = validate_manifold(manifold_input(eq_u1i(), 27, 8, 20.0, theta));
  REQUIRE(r0.p.size() == 9);
  REQUIRE(rt.p.size() == 9);
  double worst = 0.0;
  for (int m = 0; m <= 8; ++m) {
    cplx rot = std::polar(1.0, theta * m);
    for (int k = 0; k <= 27; ++k) {
      double scale = std::max(1.0, std::abs(r0.p[size_t(m)][size_t(k)]));
      worst = std::max(worst, std::abs(rt.p[size_t(m)][size_t(k)] -
                                       rot * r0.p[size_t(m)][size_t(k)]) /
                                  scale);
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("full-order validation certifies a tight uniform enclosure") {
  const ManifoldResult& r = full_u1i();
  CHECK(r.rp <= 1e-8);
  CHECK(r.rp > 0.0);
  CHECK(r.bounds.Y0 <= 1e-8);
  CHECK(r.bounds.Z0 <= 1e-6);
  CHECK(r.bounds.Z1 < 1.0);
  CHECK(r.bounds.Z2 > 0.0);

  // the series has decayed to roundoff scale at the last computed order
  double last = 0.0;
  for (int k = 0; k <= 27; ++k)
    last += (k == 0 ? 1.0 : 2.0) * std::abs(r.p[150][size_t(k)]);
  CHECK(last <= 1e-11);

  CHECK(r.norm_X == doctest::Approx(2.8447515100e+02).epsilon(1e-6));

  // endpoint of the chart at sigma = 1, pinned by the independent solver
  ManifoldPoint end = evaluate_manifold(r, cplx(1.0, 0.0));
  CHECK(end.err == r.rp);
  const cplx z0(4.1208467638942508e+01, 2.0420740936512100e+01);
  CHECK(std::abs(mid(end.coef[0]) - z0) <= 1e-7 + r.rp);
  CHECK(nu_norm_mid(end.coef) ==
        doctest::Approx(9.2550801388435147e+01).epsilon(1e-6));
}

TEST_CASE("independent truncation orders give overlapping enclosures") {
  const ManifoldResult& r150 = full_u1i();
  ManifoldResult r120 = validate_manifold(manifold_input(eq_u1i(), 27, 120));
  REQUIRE_MESSAGE(r120.success, r120.message);

  for (cplx sigma : {cplx(1.0, 0.0), cplx(0.6, 0.35)}) {
    ManifoldPoint e1 = evaluate_manifold(r150, sigma);
    ManifoldPoint e2 = evaluate_manifold(r120, sigma);
    double dist = 0.0;
    for (size_t k = 0; k < e1.coef.size(); ++k)
      dist += (k == 0 ? 1.0 : 2.0) * std::abs(mid(e1.coef[k]) - mid(e2.coef[k]));
    CHECK(dist <= r150.rp + r120.rp + 1e-12);
  }
}

TEST_CASE("evaluation stays within the chart") {
  const ManifoldResult& r = full_u1i();
  CHECK_THROWS_AS((void)evaluate_manifold(r, cplx(1.2, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS((void)evaluate_manifold(ManifoldResult{}, cplx(0.5, 0.0)),
                  std::invalid_argument);
  // interior points evaluate with the same uniform error bound
  ManifoldPoint inside = evaluate_manifold(r, cplx(0.0, 0.0));
  for (int k = 0; k <= 27; ++k) {
    CHECK(std::abs(mid(inside.coef[size_t(k)]) - r.p[0][size_t(k)]) <= 1e-15);
  }
}

TEST_CASE("data or spectrum violations fail cleanly") {
  ManifoldInput in = manifold_input(eq_u1i(), 27, 10);

  SUBCASE("an eigenvalue pointing into the resonant cone is rejected") {
    in.lambda = cplx(1.0, -2000.0);
    ManifoldResult r = validate_manifold(in);
    CHECK_FALSE(r.success);
    CHECK_FALSE(r.message.empty());
  }
  SUBCASE("a stable eigenvalue is rejected") {
    in.lambda = cplx(-2.0, 1.0);
    ManifoldResult r = validate_manifold(in);
    CHECK_FALSE(r.success);
  }
  SUBCASE("a window wider than the supplied data is rejected") {
    in.K = 40;
    ManifoldResult r = validate_manifold(in);
    CHECK_FALSE(r.success);
    CHECK_FALSE(r.message.empty());
  }
  SUBCASE("a negative data radius is rejected") {
    in.r0 = -1e-12;
    CHECK_FALSE(validate_manifold(in).success);
  }
  SUBCASE("fewer than two orders is rejected") {
    in.M = 1;
    CHECK_FALSE(validate_manifold(in).success);
  }
}

TEST_CASE("a gentler scale validates at low order, heavier weight included") {
  ManifoldInput in = manifold_input(eq_u1i(), 27, 12, 2.0);
  in.nu = 1.05;
  ManifoldResult r = validate_manifold(in);
  CHECK_MESSAGE(r.success, r.message);
  if (r.success) CHECK(r.rp < 1e-4);
}

TEST_CASE("validation is deterministic") {
  ManifoldInput in = manifold_input(eq_u1i(), 27, 10, 2.0);
  ManifoldResult r1 = validate_manifold(in);
  ManifoldResult r2 = validate_manifold(in);
  REQUIRE_MESSAGE(r1.success, r1.message);
  REQUIRE(r2.success);
  CHECK(std::memcmp(&r1.rp, &r2.rp, sizeof(double)) == 0);
  for (size_t m = 0; m < r1.p.size(); ++m)
    for (size_t k = 0; k < r1.p[m].size(); ++k) {
      CHECK(std::memcmp(&r1.p[m][k], &r2.p[m][k], sizeof(cplx)) == 0);
    }
}
