#pragma once
// Interval arithmetic with outward rounding, built on nextafter stepping so
// it works under the default round-to-nearest mode (no fesetround).  Every
// operation returns an interval guaranteed to contain the exact result;
// widths stay within a few ulp for the basic operations.
//
// Elementary functions are implemented by argument reduction against exact
// multi-double constant splittings (products made exact with std::fma) plus
// truncated Taylor series with rigorously enclosed remainders.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nlscap {

inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

namespace detail {

// Compact scientific formatting for diagnostics and failure messages.
inline std::string fmt_sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace detail

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double x) : lo(x), hi(x) {
    if (std::isnan(x)) throw std::invalid_argument("interval from NaN");
  }
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw std::invalid_argument("interval endpoints reversed");
  }

  static Interval hull(double a, double b) {
    return Interval(std::min(a, b), std::max(a, b));
  }
  // Symmetric interval [-r, r].
  static Interval symmetric(double r) { return Interval(-r, r); }

  double mid() const { return 0.5 * (lo + hi); }
  double rad() const {
    double m = mid();
    return std::max(next_up(m - lo), next_up(hi - m));
  }
  double width() const { return hi - lo; }
  // Largest absolute value over the interval.
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  // Smallest absolute value over the interval.
  double mig() const {
    if (lo <= 0.0 && 0.0 <= hi) return 0.0;
    return std::min(std::fabs(lo), std::fabs(hi));
  }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
};

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval(next_down(a.lo + b.lo), next_up(a.hi + b.hi));
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval(next_down(a.lo - b.hi), next_up(a.hi - b.lo));
}
inline Interval operator*(const Interval& a, const Interval& b) {
  double c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  double lo = std::min(std::min(c1, c2), std::min(c3, c4));
  double hi = std::max(std::max(c1, c2), std::max(c3, c4));
  return Interval(next_down(lo), next_up(hi));
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && 0.0 <= b.hi)
    throw std::domain_error("division by interval containing zero");
  double c1 = a.lo / b.lo, c2 = a.lo / b.hi, c3 = a.hi / b.lo, c4 = a.hi / b.hi;
  double lo = std::min(std::min(c1, c2), std::min(c3, c4));
  double hi = std::max(std::max(c1, c2), std::max(c3, c4));
  return Interval(next_down(lo), next_up(hi));
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}
inline Interval intersect(const Interval& a, const Interval& b) {
  double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo > hi) throw std::domain_error("empty interval intersection");
  return Interval(lo, hi);
}
inline Interval inflate(const Interval& a, double r) {
  return Interval(next_down(a.lo - r), next_up(a.hi + r));
}
inline Interval abs(const Interval& a) { return Interval(a.mig(), a.mag()); }

inline Interval sqr(const Interval& a) {
  double m = a.mag(), n = a.mig();
  double lo = (n == 0.0) ? 0.0 : next_down(n * n);
  return Interval(std::max(lo, 0.0), next_up(m * m));
}

inline Interval pow_int(const Interval& a, int n) {
  if (n < 0) return Interval(1.0) / pow_int(a, -n);
  if (n == 0) return Interval(1.0);
  if (n % 2 == 0) {
    Interval h = pow_int(a, n / 2);
    return sqr(h);
  }
  return a * pow_int(a, n - 1);
}

inline Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) throw std::domain_error("sqrt of negative interval");
  double lo = (a.lo == 0.0) ? 0.0 : std::max(0.0, next_down(std::sqrt(a.lo)));
  return Interval(lo, next_up(std::sqrt(a.hi)));
}

// pi rounded down lands below the true value, so one upward step brackets it.
inline Interval pi_interval() {
  constexpr double p = 0x1.921fb54442d18p+1;
  return Interval(p, next_up(p));
}

namespace detail {

// Exact splittings computed at 80-digit precision: the three doubles sum to
// the named constant within the stated defect.
constexpr double kHalfPi1 = 0x1.921fb54442d18p+0;
constexpr double kHalfPi2 = 0x1.1a62633145c07p-54;
constexpr double kHalfPi3 = -0x1.f1976b7ed8fbcp-110;
constexpr double kHalfPiDefect = 5.562272e-50;
constexpr double kLn21 = 0x1.62e42fefa39efp-1;
constexpr double kLn22 = 0x1.abc9e3b39803fp-56;
constexpr double kLn23 = 0x1.7b57a079a1934p-111;
constexpr double kLn2Defect = 3.582433e-50;

// Factorials as intervals (exact while representable, then 1-ulp wide).
inline const Interval& factorial(int n) {
  static const std::array<Interval, 32> table = [] {
    std::array<Interval, 32> t;
    t[0] = Interval(1.0);
    for (int i = 1; i < 32; ++i) t[i] = t[i - 1] * Interval(double(i));
    return t;
  }();
  return table.at(size_t(n));
}

// r = x - n*c for a three-double splitting of c; products are made exact via
// fma, so the near-total cancellation costs only ulp-of-result widening.
inline Interval reduce_multiple(double x, double n,
                                double c1, double c2, double c3,
                                double defect) {
  Interval r(x);
  for (double c : {c1, c2, c3}) {
    double p = n * c;
    double e = std::fma(n, c, -p);
    r = r - Interval(p) - Interval(e);
  }
  double slack = std::fabs(n) * defect;
  return Interval(next_down(r.lo - slack), next_up(r.hi + slack));
}

// sin on |r| <= pi/4 (+ small slop) by alternating Taylor series.
inline Interval sin_kernel(const Interval& r) {
  const int M = 10;
  Interval r2 = sqr(r);
  Interval acc(0.0);
  for (int m = M - 1; m >= 1; --m) {
    Interval term = Interval((m % 2 == 0) ? 1.0 : -1.0) / factorial(2 * m + 1);
    acc = (acc + term) * r2;
  }
  Interval series = r * (acc + Interval(1.0));
  double rm = r.mag();
  double rem = nlscap::pow_int(Interval(rm), 2 * M + 1).hi / factorial(2 * M + 1).lo;
  return series + Interval::symmetric(next_up(rem));
}

// cos on |r| <= pi/4 (+ small slop).
inline Interval cos_kernel(const Interval& r) {
  const int M = 10;
  Interval r2 = sqr(r);
  Interval acc(0.0);
  for (int m = M; m >= 1; --m) {
    Interval term = Interval((m % 2 == 0) ? 1.0 : -1.0) / factorial(2 * m);
    acc = (acc + term) * r2;
  }
  Interval series = acc + Interval(1.0);
  double rm = r.mag();
  double rem = nlscap::pow_int(Interval(rm), 2 * M + 2).hi / factorial(2 * M + 2).lo;
  Interval out = series + Interval::symmetric(next_up(rem));
  return Interval(std::max(out.lo, -1.0), std::min(out.hi, 1.0));
}

// sin at a point argument: reduce modulo pi/2 and dispatch on the octant.
inline Interval sin_point(double x) {
  if (x == 0.0) return Interval(0.0);
  double q = std::nearbyint(x / kHalfPi1);
  if (std::fabs(q) > 4.5e15) return Interval(-1.0, 1.0);
  Interval r = reduce_multiple(x, q, kHalfPi1, kHalfPi2, kHalfPi3, kHalfPiDefect);
  long long qi = (long long)q;
  int oct = int(((qi % 4) + 4) % 4);
  switch (oct) {
    case 0: return sin_kernel(r);
    case 1: return cos_kernel(r);
    case 2: return -sin_kernel(r);
    default: return -cos_kernel(r);
  }
}

inline Interval cos_point(double x) {
  if (x == 0.0) return Interval(1.0);
  double q = std::nearbyint(x / kHalfPi1);
  if (std::fabs(q) > 4.5e15) return Interval(-1.0, 1.0);
  Interval r = reduce_multiple(x, q, kHalfPi1, kHalfPi2, kHalfPi3, kHalfPiDefect);
  long long qi = (long long)q;
  int oct = int(((qi % 4) + 4) % 4);
  switch (oct) {
    case 0: return cos_kernel(r);
    case 1: return -sin_kernel(r);
    case 2: return -cos_kernel(r);
    default: return sin_kernel(r);
  }
}

// Does [a,b] contain a point of the form base + k*period?  Conservative
// (may answer yes slightly outside), which only widens enclosures.
inline bool contains_critical(double a, double b, double base, double period) {
  // Slack dominates the rounding error of the quotient/floor computation, so
  // a critical point can only ever be included spuriously, never missed.
  double slack =
      16.0 * std::numeric_limits<double>::epsilon() *
      std::max({1.0, std::fabs(a), std::fabs(b)});
  double k = std::floor((a - slack - base) / period) + 1.0;
  double point = base + k * period;
  return point <= b + slack;
}

}  // namespace detail

inline Interval sin(const Interval& x) {
  constexpr double kTwoPi = 6.283185307179586;
  if (x.width() >= kTwoPi) return Interval(-1.0, 1.0);
  Interval at_lo = detail::sin_point(x.lo);
  Interval at_hi = detail::sin_point(x.hi);
  Interval out = hull(at_lo, at_hi);
  constexpr double kHalfPiApprox = 1.5707963267948966;
  if (detail::contains_critical(x.lo, x.hi, kHalfPiApprox, kTwoPi))
    out.hi = 1.0;
  if (detail::contains_critical(x.lo, x.hi, -kHalfPiApprox, kTwoPi))
    out.lo = -1.0;
  return Interval(std::max(out.lo, -1.0), std::min(out.hi, 1.0));
}

inline Interval cos(const Interval& x) {
  constexpr double kTwoPi = 6.283185307179586;
  if (x.width() >= kTwoPi) return Interval(-1.0, 1.0);
  Interval at_lo = detail::cos_point(x.lo);
  Interval at_hi = detail::cos_point(x.hi);
  Interval out = hull(at_lo, at_hi);
  if (detail::contains_critical(x.lo, x.hi, 0.0, kTwoPi)) out.hi = 1.0;
  constexpr double kPiApprox = 3.141592653589793;
  if (detail::contains_critical(x.lo, x.hi, kPiApprox, 2 * kPiApprox) ||
      detail::contains_critical(x.lo, x.hi, -kPiApprox, 2 * kPiApprox))
    out.lo = -1.0;
  return Interval(std::max(out.lo, -1.0), std::min(out.hi, 1.0));
}

inline Interval exp(const Interval& x) {
  auto exp_point = [](double v, bool upper) -> double {
    if (v == 0.0) return 1.0;
    double q = std::nearbyint(v / detail::kLn21);
    if (q > 1075.0) return upper ? std::numeric_limits<double>::infinity()
                                 : std::numeric_limits<double>::max();
    if (q < -1200.0) return upper ? 5e-324 : 0.0;
    Interval r = detail::reduce_multiple(v, q, detail::kLn21, detail::kLn22,
                                         detail::kLn23, detail::kLn2Defect);
    // |r| <= ln2/2 + slop; Taylor with remainder.
    const int M = 16;
    Interval acc(0.0);
    for (int m = M; m >= 1; --m) acc = (acc + Interval(1.0) / detail::factorial(m)) * r;
    Interval series = acc + Interval(1.0);
    double rm = r.mag();
    double rem = pow_int(Interval(rm), M + 1).hi / detail::factorial(M + 1).lo /
                 (1.0 - rm / (M + 2));
    Interval er = series + Interval::symmetric(next_up(rem));
    int k = int(q);
    return upper ? next_up(std::ldexp(er.hi, k))
                 : std::max(0.0, next_down(std::ldexp(er.lo, k)));
  };
  return Interval(exp_point(x.lo, false), exp_point(x.hi, true));
}

inline Interval log(const Interval& x) {
  if (x.lo <= 0.0) throw std::domain_error("log of non-positive interval");
  auto log_point = [](double v) -> Interval {
    if (v == 1.0) return Interval(0.0);
    int e = 0;
    double m = std::frexp(v, &e);  // m in [0.5, 1)
    if (m < 0.7071067811865476) {
      m *= 2.0;
      e -= 1;
    }
    // log(m) = 2 atanh(t), t = (m-1)/(m+1), |t| <= 0.1716.
    Interval t = (Interval(m) - 1.0) / (Interval(m) + 1.0);
    const int J = 14;
    Interval t2 = sqr(t);
    Interval s(0.0);
    Interval tp = t;
    for (int j = 0; j < J; ++j) {
      s += tp / double(2 * j + 1);
      tp *= t2;
    }
    double tm = t.mag();
    double rem = 2.0 * pow_int(Interval(tm), 2 * J + 1).hi /
                 ((2 * J + 1) * (1.0 - tm * tm));
    Interval logm = 2.0 * s + Interval::symmetric(next_up(rem));
    Interval ln2 = Interval(detail::kLn21) + Interval(detail::kLn22) +
                   Interval(detail::kLn23) + Interval::symmetric(detail::kLn2Defect);
    return Interval(double(e)) * ln2 + logm;
  };
  Interval at_lo = log_point(x.lo), at_hi = log_point(x.hi);
  return Interval(at_lo.lo, at_hi.hi);
}

inline Interval atan(const Interval& x) {
  auto atan_small = [](Interval t) -> Interval {
    // Two half-angle reductions, then Taylor on |u| <= tan(pi/16)+slop.
    for (int i = 0; i < 2; ++i)
      t = t / (Interval(1.0) + sqrt(Interval(1.0) + sqr(t)));
    const int M = 12;
    Interval u2 = sqr(t);
    Interval s(0.0);
    Interval up = t;
    for (int m = 0; m < M; ++m) {
      s += Interval((m % 2 == 0) ? 1.0 : -1.0) * up / double(2 * m + 1);
      up *= u2;
    }
    double um = t.mag();
    double rem = pow_int(Interval(um), 2 * M + 1).hi /
                 ((2 * M + 1) * (1.0 - um * um));
    return 4.0 * (s + Interval::symmetric(next_up(rem)));
  };
  auto atan_point = [&](double v) -> Interval {
    if (v == 0.0) return Interval(0.0);
    double av = std::fabs(v);
    Interval r;
    if (av <= 1.0) {
      r = atan_small(Interval(av));
    } else {
      Interval half_pi = pi_interval() * 0.5;
      r = half_pi - atan_small(Interval(1.0) / Interval(av));
    }
    return v > 0 ? r : -r;
  };
  Interval at_lo = atan_point(x.lo), at_hi = atan_point(x.hi);
  return Interval(at_lo.lo, at_hi.hi);
}

inline Interval atan2(const Interval& y, const Interval& x) {
  Interval pi_iv = pi_interval();
  if (x.lo > 0.0) return atan(y / x);
  if (x.hi < 0.0) {
    if (y.lo >= 0.0) return pi_iv + atan(y / x);
    if (y.hi <= 0.0) return atan(y / x) - pi_iv;
    throw std::domain_error("atan2 rectangle crosses the branch cut");
  }
  if (y.lo > 0.0) return pi_iv * 0.5 - atan(x / y);
  if (y.hi < 0.0) return -(pi_iv * 0.5) - atan(x / y);
  throw std::domain_error("atan2 rectangle contains the origin");
}

// Rectangular complex interval.
struct CInterval {
  Interval re, im;

  CInterval() = default;
  CInterval(Interval r, Interval i) : re(r), im(i) {}
  explicit CInterval(double r, double i = 0.0) : re(r), im(i) {}

  // Upper bound for sup |z| over the rectangle.  The squared modulus is
  // nonnegative by construction, so its enclosure may be clipped at zero
  // before the root (addition rounds an exact 0 + 0 below zero).
  double mag() const {
    Interval s = sqr(Interval(re.mag())) + sqr(Interval(im.mag()));
    return sqrt(Interval(std::max(0.0, s.lo), s.hi)).hi;
  }
  // Lower bound for inf |z| over the rectangle.
  double mig() const {
    double r = re.mig(), i = im.mig();
    if (r == 0.0 && i == 0.0) return 0.0;
    Interval s = sqr(Interval(r)) + sqr(Interval(i));
    return sqrt(Interval(std::max(0.0, s.lo), s.hi)).lo;
  }
  bool contains_zero() const { return re.contains(0.0) && im.contains(0.0); }
  double mid_re() const { return re.mid(); }
  double mid_im() const { return im.mid(); }
};

inline CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }
inline CInterval operator+(const CInterval& a, const CInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline CInterval operator-(const CInterval& a, const CInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
inline CInterval operator*(const CInterval& a, const CInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval operator*(const Interval& a, const CInterval& b) {
  return {a * b.re, a * b.im};
}
inline CInterval operator*(const CInterval& a, const Interval& b) { return b * a; }
inline CInterval operator*(double a, const CInterval& b) {
  return Interval(a) * b;
}
inline CInterval& operator+=(CInterval& a, const CInterval& b) { return a = a + b; }
inline CInterval& operator-=(CInterval& a, const CInterval& b) { return a = a - b; }

inline CInterval conj(const CInterval& a) { return {a.re, -a.im}; }
// Multiplication by the imaginary unit (exact).
inline CInterval mul_i(const CInterval& a) { return {-a.im, a.re}; }

inline CInterval recip(const CInterval& a) {
  Interval den = sqr(a.re) + sqr(a.im);
  return {a.re / den, -(a.im / den)};
}
inline CInterval operator/(const CInterval& a, const CInterval& b) {
  return a * recip(b);
}

}  // namespace nlscap
