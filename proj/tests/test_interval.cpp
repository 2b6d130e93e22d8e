#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlscap/interval.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "mpfr_oracle.hpp"

using nlscap::CInterval;
using nlscap::Interval;

namespace {

// Checks that `iv` contains the value held by the oracle (bracketed by its
// directed double endpoints).
bool encloses(const Interval& iv, const oracle::Real& v) {
  return iv.lo <= v.lower() && v.upper() <= iv.hi;
}

bool encloses_literal(const Interval& iv, const std::string& decimal) {
  return encloses(iv, oracle::Real::from_string(decimal));
}

double ulp_width(const Interval& iv) {
  double u = std::max(std::fabs(iv.lo), std::fabs(iv.hi));
  double ulp = std::nextafter(u, std::numeric_limits<double>::infinity()) - u;
  return (iv.hi - iv.lo) / ulp;
}

// Deterministic random doubles spanning many magnitudes.
class RandomDoubles {
 public:
  explicit RandomDoubles(unsigned seed) : gen_(seed) {}
  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(gen_);
  }
  // Mantissa in [-1,1), exponent in [-erange, erange].
  double scaled(int erange) {
    double m = uniform(-1.0, 1.0);
    int e = std::uniform_int_distribution<int>(-erange, erange)(gen_);
    return std::ldexp(m, e);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

TEST_CASE("directed endpoint stepping") {
  CHECK(nlscap::next_up(1.0) > 1.0);
  CHECK(nlscap::next_down(1.0) < 1.0);
  CHECK(nlscap::next_up(0.0) > 0.0);
  CHECK(nlscap::next_down(0.0) < 0.0);
  CHECK(nlscap::next_up(-1.0) > -1.0);
  // A single step moves exactly one representable value.
  CHECK(nlscap::next_down(nlscap::next_up(3.5)) == 3.5);
}

TEST_CASE("interval construction and queries") {
  Interval a(2.0, 3.0);
  CHECK(a.mid() == 2.5);
  CHECK(a.rad() >= 0.5);
  CHECK(a.mag() == 3.0);
  CHECK(a.mig() == 2.0);
  CHECK(a.contains(2.0));
  CHECK(a.contains(3.0));
  CHECK(!a.contains(3.0000001));

  Interval b(-4.0, 1.0);
  CHECK(b.mag() == 4.0);
  CHECK(b.mig() == 0.0);

  Interval p(5.0);
  CHECK(p.lo == 5.0);
  CHECK(p.hi == 5.0);

  CHECK_THROWS(Interval(1.0, 0.0));
}

TEST_CASE("arithmetic containment against 200-bit oracle") {
  RandomDoubles rng(20260819u);
  for (int trial = 0; trial < 20000; ++trial) {
    double a = rng.scaled(30), b = rng.scaled(30);
    oracle::Real oa = oracle::Real::from_double(a);
    oracle::Real ob = oracle::Real::from_double(b);
    Interval ia(a), ib(b);

    CHECK(encloses(ia + ib, oracle::add(oa, ob)));
    CHECK(encloses(ia - ib, oracle::sub(oa, ob)));
    CHECK(encloses(ia * ib, oracle::mul(oa, ob)));
    if (b != 0.0) CHECK(encloses(ia / ib, oracle::div(oa, ob)));
  }
}

TEST_CASE("arithmetic tightness is a few ulp") {
  RandomDoubles rng(7u);
  for (int trial = 0; trial < 2000; ++trial) {
    double a = rng.uniform(-10.0, 10.0), b = rng.uniform(0.1, 10.0);
    CHECK(ulp_width(Interval(a) + Interval(b)) <= 2.5);
    CHECK(ulp_width(Interval(a) * Interval(b)) <= 2.5);
    CHECK(ulp_width(Interval(a) / Interval(b)) <= 2.5);
  }
}

TEST_CASE("interval arithmetic preserves set inclusion") {
  RandomDoubles rng(99u);
  for (int trial = 0; trial < 5000; ++trial) {
    Interval a = Interval::hull(rng.uniform(-5, 5), rng.uniform(-5, 5));
    Interval b = Interval::hull(rng.uniform(-5, 5), rng.uniform(-5, 5));
    double xa = rng.uniform(a.lo, a.hi), xb = rng.uniform(b.lo, b.hi);
    CHECK((a + b).contains(Interval(xa) + Interval(xb)));
    CHECK((a - b).contains(Interval(xa) - Interval(xb)));
    CHECK((a * b).contains(Interval(xa) * Interval(xb)));
    if (!b.contains(0.0)) CHECK((a / b).contains(Interval(xa) / Interval(xb)));
  }
}

TEST_CASE("division by an interval containing zero is rejected") {
  CHECK_THROWS(Interval(1.0) / Interval(-1.0, 1.0));
  CHECK_THROWS(Interval(1.0) / Interval(0.0));
}

TEST_CASE("pi enclosure") {
  Interval p = nlscap::pi_interval();
  CHECK(encloses(p, oracle::pi()));
  CHECK(ulp_width(p) <= 4.0);
}

TEST_CASE("frozen transcendental anchors") {
  using nlscap::exp;
  using nlscap::log;
  using nlscap::sqrt;

  CHECK(encloses_literal(exp(Interval(0.5)), "1.648721270700128146848651"));
  CHECK(encloses_literal(exp(Interval(-3.75)),
                         "0.02351774585600910823615119"));
  CHECK(encloses_literal(exp(Interval(10.0)), "22026.46579480671651695790"));
  CHECK(encloses_literal(sqrt(Interval(2.0)), "1.414213562373095048801689"));
  CHECK(encloses_literal(sqrt(Interval(6.25)), "2.5"));
  CHECK(encloses_literal(log(Interval(3.0)), "1.098612288668109691395245"));
  // log(2^-17) = -17 ln 2; the input is exactly representable.
  CHECK(encloses_literal(log(Interval(std::ldexp(1.0, -17))),
                         "-11.78350206951907026009295"));
  CHECK(encloses_literal(nlscap::sin(Interval(1.0)),
                         "0.8414709848078965066525023"));
  CHECK(encloses_literal(nlscap::cos(Interval(1.0)),
                         "0.5403023058681397174009366"));
  CHECK(encloses_literal(nlscap::sin(Interval(100.0)),
                         "-0.5063656411097587936565576"));
  CHECK(encloses_literal(nlscap::cos(Interval(100.0)),
                         "0.8623188722876839341019385"));
  CHECK(encloses_literal(nlscap::atan(Interval(1.0)),
                         "0.7853981633974483096156608"));
  CHECK(encloses_literal(nlscap::atan(Interval(37.5)),
                         "1.544135978420298665588469"));
  CHECK(encloses_literal(nlscap::atan2(Interval(1.0), Interval(-1.0)),
                         "2.356194490192344928846983"));
  CHECK(encloses_literal(nlscap::atan2(Interval(-2.0), Interval(-3.0)),
                         "-2.553590050042225687217032"));
}

TEST_CASE("huge-argument sine stays a valid enclosure") {
  Interval s = nlscap::sin(Interval(1e10));
  CHECK(encloses_literal(s, "-0.4875060250875106915277943"));
  CHECK(s.hi - s.lo <= 1e-4);
  CHECK(s.lo >= -1.0);
  CHECK(s.hi <= 1.0);
}

TEST_CASE("randomized transcendental containment") {
  RandomDoubles rng(314159u);
  for (int trial = 0; trial < 4000; ++trial) {
    double x = rng.uniform(-50.0, 50.0);
    oracle::Real ox = oracle::Real::from_double(x);
    CHECK(encloses(nlscap::sin(Interval(x)), oracle::sin(ox)));
    CHECK(encloses(nlscap::cos(Interval(x)), oracle::cos(ox)));
    CHECK(encloses(nlscap::atan(Interval(x)), oracle::atan(ox)));

    double e = rng.uniform(-40.0, 40.0);
    CHECK(encloses(nlscap::exp(Interval(e)), oracle::exp(oracle::Real::from_double(e))));

    double p = rng.uniform(1e-8, 1e8);
    CHECK(encloses(nlscap::log(Interval(p)), oracle::log(oracle::Real::from_double(p))));
    CHECK(encloses(nlscap::sqrt(Interval(p)), oracle::sqrt(oracle::Real::from_double(p))));

    double y2 = rng.uniform(-3.0, 3.0), x2 = rng.uniform(-3.0, 3.0);
    if (std::fabs(x2) > 1e-6 || std::fabs(y2) > 1e-6) {
      CHECK(encloses(nlscap::atan2(Interval(y2), Interval(x2)),
                     oracle::atan2(oracle::Real::from_double(y2),
                                   oracle::Real::from_double(x2))));
    }
  }
}

TEST_CASE("transcendental tightness on moderate arguments") {
  RandomDoubles rng(55u);
  for (int trial = 0; trial < 500; ++trial) {
    double x = rng.uniform(-20.0, 20.0);
    Interval e = nlscap::exp(Interval(x));
    CHECK((e.hi - e.lo) / e.hi <= 1e-13);
    Interval s = nlscap::sin(Interval(x));
    CHECK(s.hi - s.lo <= 1e-13);
    Interval c = nlscap::cos(Interval(x));
    CHECK(c.hi - c.lo <= 1e-13);
  }
}

TEST_CASE("monotone and non-monotone sine over wide intervals") {
  // Interval spanning a maximum: sup must be exactly 1.
  Interval s = nlscap::sin(Interval(1.0, 2.0));
  CHECK(s.hi == 1.0);
  // inf over [1,2] is sin(1); the enclosure's lower end sits just below it.
  CHECK(s.lo <= 0.8414709848078966);
  CHECK(s.lo >= 0.84);
  // Width >= full period collapses to [-1, 1].
  Interval w = nlscap::sin(Interval(0.0, 10.0));
  CHECK(w.lo == -1.0);
  CHECK(w.hi == 1.0);
}

TEST_CASE("integer powers tighten even exponents") {
  Interval a(-2.0, 3.0);
  Interval sq = nlscap::sqr(a);
  CHECK(sq.lo == 0.0);
  CHECK(sq.hi >= 9.0);
  CHECK(sq.hi <= 9.0000000001);
  Interval p4 = nlscap::pow_int(a, 4);
  CHECK(p4.lo == 0.0);
  CHECK(p4.hi >= 81.0);
  Interval p3 = nlscap::pow_int(a, 3);
  CHECK(p3.lo <= -8.0);
  CHECK(p3.hi >= 27.0);
}

TEST_CASE("complex rectangles") {
  RandomDoubles rng(2718u);
  for (int trial = 0; trial < 5000; ++trial) {
    double ar = rng.uniform(-4, 4), ai = rng.uniform(-4, 4);
    double br = rng.uniform(-4, 4), bi = rng.uniform(-4, 4);
    CInterval a{Interval(ar), Interval(ai)}, b{Interval(br), Interval(bi)};

    CInterval prod = a * b;
    oracle::Real re = oracle::sub(
        oracle::mul(oracle::Real::from_double(ar), oracle::Real::from_double(br)),
        oracle::mul(oracle::Real::from_double(ai), oracle::Real::from_double(bi)));
    oracle::Real im = oracle::add(
        oracle::mul(oracle::Real::from_double(ar), oracle::Real::from_double(bi)),
        oracle::mul(oracle::Real::from_double(ai), oracle::Real::from_double(br)));
    CHECK(encloses(prod.re, re));
    CHECK(encloses(prod.im, im));

    // mag() dominates the true modulus.
    double hyp = std::hypot(ar, ai);
    CHECK(a.mag() >= hyp * (1 - 1e-14));

    CInterval sum = a + b;
    CHECK(sum.re.contains(ar + br));
    CHECK(sum.im.contains(ai + bi));
  }

  // Multiplication by i rotates the rectangle.
  CInterval z{Interval(1.0, 2.0), Interval(3.0, 4.0)};
  CInterval iz = nlscap::mul_i(z);
  CHECK(iz.re.lo == -4.0);
  CHECK(iz.re.hi == -3.0);
  CHECK(iz.im.lo == 1.0);
  CHECK(iz.im.hi == 2.0);
}

TEST_CASE("complex division and reciprocal") {
  CInterval z{Interval(3.0), Interval(4.0)};
  CInterval w = nlscap::recip(z);
  // 1/(3+4i) = (3-4i)/25
  CHECK(w.re.contains(0.12));
  CHECK(w.im.contains(-0.16));
  CHECK(w.re.hi - w.re.lo <= 1e-15);

  CInterval q = CInterval{Interval(1.0), Interval(0.0)} / z;
  CHECK(q.re.contains(0.12));
  CHECK(q.im.contains(-0.16));
}

TEST_CASE("interval hull and intersection helpers") {
  Interval a(1.0, 3.0), b(2.0, 5.0);
  Interval h = nlscap::hull(a, b);
  CHECK(h.lo == 1.0);
  CHECK(h.hi == 5.0);
  CHECK(nlscap::intersect(a, b).lo == 2.0);
  CHECK(nlscap::intersect(a, b).hi == 3.0);
}
