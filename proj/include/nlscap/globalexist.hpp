#pragma once
// Terminal stable-set certificates.  Once an orbit's zero mode z0 sits in the
// closed upper half plane, the spatially constant equation  z' = i z^2  is
// solved exactly by the sector profile
//     zeta(t) = z0 / (1 - i z0 t),
// whose modulus never exceeds |z0| and whose square integrates over all
// forward time to at most (pi/2)|z0|.  A solution whose distance to that
// profile — terminal tail plus enclosure radii, rescaled by |z0|^2 — fits a
// budget rho1 stays trapped whenever the contraction inequality
//     rho1 * exp((pi/2) rho0 r) < r
// closes at some radius r: every enclosed solution then exists globally and
// relaxes onto a sector profile.  The inequality is sampled on a log-spaced
// radius grid in interval arithmetic; the optimal ratio rho1 (pi/2) rho0 e is
// reported as the certificate's margin.

#include <nlscap/interval.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace nlscap {

// Closed-form constant of the power-p sector estimates,
//     exp( -(pi/2) (2^p - p - 1) / (p - 1) ),
// the guaranteed fraction of the profile's decay budget that survives all
// 2^p - p - 1 nonlinear interaction terms.  The quadratic equation uses p=2.
inline Interval sector_constant(int p) {
  if (p < 2) throw std::invalid_argument("sector constant needs a power >= 2");
  if (p > 50) throw std::invalid_argument("sector constant power too large");
  const double count = std::ldexp(1.0, p) - double(p) - 1.0;  // exact
  const Interval expo =
      -(pi_interval() / 2.0) * Interval(count) / Interval(double(p - 1));
  return exp(expo);
}

// Enclosure of the sector profile at time t >= 0.
inline CInterval sector_profile(std::complex<double> z0, double t) {
  if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag()) ||
      !std::isfinite(t))
    throw std::invalid_argument("sector profile needs finite data");
  if (t < 0.0) throw std::invalid_argument("sector profile runs forward only");
  const CInterval z(Interval(z0.real()), Interval(z0.imag()));
  const Interval tI(t);
  // w = 1 - i z0 t = (1 + Im z0 t) - i (Re z0 t)
  const CInterval w(Interval(1.0) + z.im * tI, -(z.re * tI));
  const Interval den = sqr(w.re) + sqr(w.im);
  if (!(den.lo > 0.0))
    throw std::domain_error("sector profile hit its singularity");
  const CInterval num = z * CInterval(w.re, -w.im);
  return CInterval(num.re / den, num.im / den);
}

struct StableInput {
  std::complex<double> z0;  // zero mode of the terminal enclosure midpoint
  double tail_norm = 0.0;   // weighted norm of the terminal tail midpoints
  double rho0_enc = 0.0;    // certified enclosure radius, zero mode
  double rhoinf_enc = 0.0;  // certified enclosure radius, tail
};

struct StableCertificate {
  bool success = false;
  std::string message;
  double rho0 = 0.0;       // profile magnitude bound |z0|
  double rho1 = 0.0;       // rescaled perturbation budget
  double margin = 0.0;     // best possible contraction ratio, < 1 is feasible
  double witness_r = 0.0;  // radius at which the inequality closed
};

inline StableCertificate verify_stable(const StableInput& in) {
  StableCertificate out;
  auto fail = [&](const std::string& why) {
    out.success = false;
    out.message = why;
    return out;
  };
  if (!std::isfinite(in.z0.real()) || !std::isfinite(in.z0.imag()) ||
      !std::isfinite(in.tail_norm) || !std::isfinite(in.rho0_enc) ||
      !std::isfinite(in.rhoinf_enc))
    return fail("terminal data must be finite");
  if (in.tail_norm < 0.0 || in.rho0_enc < 0.0 || in.rhoinf_enc < 0.0)
    return fail("perturbation budgets must be nonnegative");
  if (!(in.z0.imag() >= 0.0))
    return fail("zero mode lies below the decaying sector");

  const Interval z2 =
      sqr(Interval(in.z0.real())) + sqr(Interval(in.z0.imag()));
  if (!(z2.lo > 0.0)) return fail("zero mode vanishes");
  out.rho0 = sqrt(z2).hi;

  const Interval budget = Interval(in.tail_norm) + Interval(in.rho0_enc) +
                          Interval(in.rhoinf_enc);
  out.rho1 = (budget / z2).hi;
  if (out.rho1 == 0.0) {
    // the enclosure is exactly a sector profile
    out.success = true;
    out.message = "stable set certified with an empty budget";
    return out;
  }

  const Interval growth = (pi_interval() / 2.0) * Interval(out.rho0);
  out.margin = (Interval(out.rho1) * growth * exp(Interval(1.0))).hi;

  for (int i = 0; i < 60; ++i) {
    const double r = out.rho1 * std::pow(1000.0, double(i) / 59.0);
    const Interval lhs = Interval(out.rho1) * exp(growth * Interval(r));
    if (lhs.hi < r) {
      out.success = true;
      out.witness_r = r;
      out.message = "stable set certified";
      return out;
    }
  }
  return fail("contraction inequality failed on every sampled radius (margin " +
              detail::fmt_sci(out.margin) + ")");
}

}  // namespace nlscap
