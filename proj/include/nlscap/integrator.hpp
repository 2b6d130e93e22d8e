#pragma once
// Rigorous time stepping for the spatially cosine-projected flow
//   da_k/dt = i( mu_k a_k + (a*a)_k ),   mu_k = -(2 pi k)^2.
//
// Each step works in two phases.  A plain double-precision Newton iteration
// finds a Chebyshev collocation polynomial close to the orbit segment; the
// polynomial is data, and no rigor is attached to how it was found.  Interval
// arithmetic then bounds the defect of that polynomial in the equation, the
// growth constants of the linearized flow around it (zero mode and tail are
// tracked separately, with an explicit contraction margin coupling the two),
// and finally certifies tube radii around the polynomial that contain every
// true solution starting inside the given initial enclosure.

#include <Eigen/Dense>
#include <nlscap/interval.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlscap {

struct IntegratorOptions {
  int coeffs = 13;       // Chebyshev coefficients per mode on each step
  double step = 2.5e-3;  // step length
  int steps = 20;        // number of consecutive steps
  double eps0 = 0.0;     // zero-mode radius of the initial enclosure
  double epsinf = 0.0;   // tail radius of the initial enclosure
};

struct StepCertificate {
  // c[n][k]: n-th Chebyshev coefficient of mode k over this step, in the
  // normalized time tau in [-1, 1].
  std::vector<std::vector<std::complex<double>>> c;
  double newton_residual = 0.0;
  double d0 = 0.0;      // equation defect of the polynomial, zero mode
  double dinf = 0.0;    // equation defect, weighted tail
  double normX = 0.0;   // sup over the step of the orbit-norm bound
  double W0 = 0.0;      // sup growth factor of the zero-mode linear flow
  double Winf = 0.0;    // integrated growth bound of the full linear flow
  double Wbar = 0.0;    // doubly integrated growth kernel
  double Wsup = 0.0;    // sup growth factor of the full linear flow
  double kappa = 0.0;   // contraction margin of the 2x2 coupling
  double eps0 = 0.0;    // effective incoming enclosure radius, zero mode
  double epsinf = 0.0;  // effective incoming enclosure radius, tail
  double rho0 = 0.0;    // certified tube radius over the step, zero mode
  double rhoinf = 0.0;  // certified tube radius over the step, tail
};

struct IntegrationResult {
  bool success = false;
  std::string message;
  int modes = 0;   // highest retained mode K
  int coeffs = 0;  // Chebyshev coefficients per step
  double step = 0.0;
  std::vector<StepCertificate> steps;
  std::vector<std::complex<double>> phi_end;  // midpoints at the final time
  double rho0_end = 0.0;    // enclosure radius around phi_end, zero mode
  double rhoinf_end = 0.0;  // enclosure radius around phi_end, tail
};

namespace detail {

inline Interval mu_flow(int k) {
  return -sqr(Interval(2.0) * pi_interval() * double(k));
}

inline CInterval ci_exact(std::complex<double> z) {
  return CInterval(Interval(z.real()), Interval(z.imag()));
}

// Chebyshev basis values and derivatives at the collocation nodes, plus the
// basis values at tau = -1, all in plain double (the polynomial these define
// is data; rigor never relies on these numbers).
struct ChebTables {
  Eigen::MatrixXd val;    // (N-1) x N
  Eigen::MatrixXd der;    // (N-1) x N
  Eigen::VectorXd at_m1;  // N
};

inline ChebTables cheb_tables(int N) {
  ChebTables t;
  int G = N - 1;
  t.val.resize(G, N);
  t.der.resize(G, N);
  t.at_m1.resize(N);
  for (int i = 0; i < G; ++i) {
    double x = std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * G));
    double T0 = 1.0, T1 = x, U0 = 1.0, U1 = 2.0 * x;
    for (int n = 0; n < N; ++n) {
      if (n == 0) {
        t.val(i, n) = 1.0;
        t.der(i, n) = 0.0;
      } else if (n == 1) {
        t.val(i, n) = x;
        t.der(i, n) = 1.0;
      } else {
        double T2 = 2.0 * x * T1 - T0;
        t.val(i, n) = T2;
        t.der(i, n) = double(n) * U1;  // T_n' = n U_{n-1}
        T0 = T1;
        T1 = T2;
        double U2 = 2.0 * x * U1 - U0;
        U0 = U1;
        U1 = U2;
      }
    }
  }
  for (int n = 0; n < N; ++n) t.at_m1(n) = (n % 2 == 0) ? 1.0 : -1.0;
  return t;
}

// Symmetric cosine-basis fold of point values, double precision.
inline Eigen::VectorXcd fold_point(const Eigen::VectorXcd& a) {
  int n = int(a.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      std::complex<double> pr = a(k1) * a(k2);
      if (k1 + k2 < n) out(k1 + k2) += pr;
      if (k2 > 0 && k1 >= k2) out(k1 - k2) += pr;
      if (k1 > 0 && k2 >= k1) out(k2 - k1) += pr;
    }
  return out;
}

// One collocation solve: N Chebyshev coefficients per mode, N-1 interior
// Gauss nodes plus the initial-condition row.  Returns the final residual.
inline double collocation_solve(const std::vector<std::complex<double>>& phi,
                                int N, double h, const ChebTables& tab,
                                Eigen::MatrixXcd& c) {
  using Eigen::MatrixXcd;
  using Eigen::VectorXcd;
  const int K = int(phi.size()) - 1;
  const int nk = K + 1;
  const int G = N - 1;
  const std::complex<double> I(0.0, 1.0);

  Eigen::VectorXd mu(nk);
  for (int k = 0; k < nk; ++k) mu(k) = -(2.0 * M_PI * k) * (2.0 * M_PI * k);

  c = MatrixXcd::Zero(N, nk);
  for (int k = 0; k < nk; ++k) c(0, k) = phi[std::size_t(k)];

  double res = std::numeric_limits<double>::infinity();
  double prev = res;
  MatrixXcd J(N * nk, N * nk);
  MatrixXcd F(G, nk);
  VectorXcd Fic(nk), rhs(N * nk);
  for (int it = 0; it < 30; ++it) {
    MatrixXcd aval = tab.val * c;  // G x nk
    for (int i = 0; i < G; ++i) {
      VectorXcd sq = fold_point(aval.row(i).transpose());
      for (int k = 0; k < nk; ++k) {
        std::complex<double> der(0.0, 0.0);
        for (int n = 0; n < N; ++n) der += tab.der(i, n) * c(n, k);
        F(i, k) = (2.0 / h) * der - I * (mu(k) * aval(i, k) + sq(k));
      }
    }
    for (int k = 0; k < nk; ++k) {
      std::complex<double> s(0.0, 0.0);
      for (int n = 0; n < N; ++n) s += tab.at_m1(n) * c(n, k);
      Fic(k) = s - phi[std::size_t(k)];
    }
    res = std::max(F.cwiseAbs().maxCoeff(), Fic.cwiseAbs().maxCoeff());
    if (!std::isfinite(res)) return res;
    if (res < 1e-12) break;
    if (it > 4 && res > 0.5 * prev) break;  // stalled at rounding level
    prev = res;

    J.setZero();
    for (int i = 0; i < G; ++i) {
      // Jacobian of the fold at the node values: linear in each slot, and
      // the rules are swap-symmetric, hence the factor two.
      MatrixXcd conv = MatrixXcd::Zero(nk, nk);
      for (int m = 0; m < nk; ++m)
        for (int k = 0; k < nk; ++k) {
          std::complex<double> v = 2.0 * aval(i, k);
          if (m + k < nk) conv(m + k, m) += v;
          if (k > 0 && m >= k) conv(m - k, m) += v;
          if (m > 0 && k >= m) conv(k - m, m) += v;
        }
      for (int n = 0; n < N; ++n) {
        for (int k = 0; k < nk; ++k)
          J(i * nk + k, n * nk + k) += (2.0 / h) * tab.der(i, n) -
                                       I * tab.val(i, n) * mu(k);
        for (int k = 0; k < nk; ++k)
          for (int r = 0; r < nk; ++r)
            J(i * nk + r, n * nk + k) -= I * tab.val(i, n) * conv(r, k);
      }
    }
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < nk; ++k) J(G * nk + k, n * nk + k) = tab.at_m1(n);

    for (int i = 0; i < G; ++i)
      for (int k = 0; k < nk; ++k) rhs(i * nk + k) = -F(i, k);
    for (int k = 0; k < nk; ++k) rhs(G * nk + k) = -Fic(k);

    VectorXcd dc = J.partialPivLu().solve(rhs);
    if (!dc.allFinite()) return std::numeric_limits<double>::infinity();
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < nk; ++k) c(n, k) += dc(n * nk + k);
  }
  return res;
}

}  // namespace detail

// Rigorous upper bound for the growth factor of the zero-mode linear flow
// over one step: the supremum over 0 <= s <= t <= h of the propagator
// modulus exp(-2 Im(Q(t) - Q(s))), where Q is the time antiderivative of the
// zero mode whose Chebyshev coefficients (in normalized time) are given.
// Always >= 1, since s = t is an admissible pair.
inline double zero_mode_growth(const std::vector<std::complex<double>>& c0,
                               double h) {
  if (c0.empty() || !(h > 0.0))
    throw std::invalid_argument("zero-mode growth needs coefficients and h > 0");
  const int N = int(c0.size());

  // Imaginary part of the tau-antiderivative, scaled to real time by h/2.
  std::vector<Interval> q(std::size_t(N) + 1, Interval(0.0));
  Interval half_h = Interval(h) / 2.0;
  q[1] = q[1] + Interval(c0[0].imag()) * half_h;
  if (N >= 2) {
    Interval t = Interval(c0[1].imag()) * half_h / 4.0;
    q[0] = q[0] + t;
    q[2] = q[2] + t;
  }
  for (int n = 2; n < N; ++n) {
    Interval cn = Interval(c0[std::size_t(n)].imag()) * half_h;
    q[std::size_t(n) + 1] = q[std::size_t(n) + 1] + cn / (2.0 * (n + 1));
    q[std::size_t(n) - 1] = q[std::size_t(n) - 1] - cn / (2.0 * (n - 1));
  }

  // Cover tau in [-1, 1] by Chebyshev-angle subintervals (time increases
  // with the index) and enclose Im Q on each via exact cosine ranges.  The
  // worst admissible pair is a maximum of Im Q followed by a minimum.
  const int NP = 64 * N;
  std::vector<double> theta(std::size_t(NP) + 2);
  theta[0] = next_up(M_PI);  // overshoot so the union certainly covers pi
  for (int j = 1; j <= NP; ++j)
    theta[std::size_t(j)] = M_PI * (1.0 - double(j) / (NP + 1));
  theta[std::size_t(NP) + 1] = 0.0;

  double run_max = -std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int j = 0; j <= NP; ++j) {
    Interval th(theta[std::size_t(j) + 1], theta[std::size_t(j)]);
    Interval imq = q[0];
    for (int n = 1; n <= N; ++n)
      imq = imq + q[std::size_t(n)] * cos(double(n) * th);
    run_max = std::max(run_max, imq.hi);
    worst = std::min(worst, next_down(imq.lo - run_max));
  }
  return exp(Interval(-2.0) * Interval(worst)).hi;
}

// Midpoint value of the certified polynomial at normalized time tau.
inline std::vector<std::complex<double>> step_value(const StepCertificate& s,
                                                    double tau) {
  const int N = int(s.c.size());
  if (N == 0) throw std::invalid_argument("empty step certificate");
  const int nk = int(s.c[0].size());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(nk));
  for (int k = 0; k < nk; ++k) {
    std::complex<double> b1(0.0, 0.0), b2(0.0, 0.0);
    for (int n = N - 1; n >= 1; --n) {
      std::complex<double> b0 =
          s.c[std::size_t(n)][std::size_t(k)] + 2.0 * tau * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    out[std::size_t(k)] = s.c[0][std::size_t(k)] + tau * b1 - b2;
  }
  return out;
}

inline IntegrationResult integrate_orbit(
    const std::vector<std::complex<double>>& phi_in,
    const IntegratorOptions& opt = {}) {
  if (phi_in.empty()) throw std::invalid_argument("empty initial data");
  for (const auto& z : phi_in)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("initial data must be finite");
  if (opt.coeffs < 3) throw std::invalid_argument("need at least 3 coefficients");
  if (!(opt.step > 0.0) || !std::isfinite(opt.step))
    throw std::invalid_argument("step length must be positive");
  if (opt.steps < 1) throw std::invalid_argument("need at least one step");
  if (!(opt.eps0 >= 0.0) || !(opt.epsinf >= 0.0) ||
      !std::isfinite(opt.eps0) || !std::isfinite(opt.epsinf))
    throw std::invalid_argument("initial enclosure radii must be finite and >= 0");

  const int K = int(phi_in.size()) - 1;
  const int nk = K + 1;
  const int N = opt.coeffs;
  const double h = opt.step;

  IntegrationResult out;
  out.modes = K;
  out.coeffs = N;
  out.step = h;

  auto fail = [&](int step_idx, const std::string& why) {
    out.success = false;
    out.message = "step " + std::to_string(step_idx) + ": " + why;
    return out;
  };

  const detail::ChebTables tab = detail::cheb_tables(N);
  std::vector<Interval> mu(static_cast<std::size_t>(nk));
  for (int k = 0; k < nk; ++k) mu[std::size_t(k)] = detail::mu_flow(k);
  const Interval hI(h);

  std::vector<std::complex<double>> phi = phi_in;
  double e0_in = opt.eps0, einf_in = opt.epsinf;

  for (int stp = 0; stp < opt.steps; ++stp) {
    Eigen::MatrixXcd c;
    double res = detail::collocation_solve(phi, N, h, tab, c);
    if (!(res < 1e-8))
      return fail(stp, "collocation iteration did not converge (residual " +
                           detail::fmt_sci(res) + ")");

    StepCertificate cert;
    cert.newton_residual = res;
    cert.c.assign(std::size_t(N),
                  std::vector<std::complex<double>>(std::size_t(nk)));
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < nk; ++k)
        cert.c[std::size_t(n)][std::size_t(k)] = c(n, k);

    // ---- rigorous defect of the polynomial in the equation -------------
    // Columns up to 2K catch the product tail the polynomial cannot match.
    const int nrow = 2 * N - 1, ncol = 2 * K + 1;
    std::vector<std::vector<CInterval>> dfull(
        std::size_t(nrow),
        std::vector<CInterval>(std::size_t(ncol),
                               CInterval(Interval(0.0), Interval(0.0))));
    const Interval two_over_h = Interval(2.0) / hI;
    for (int k = 0; k < nk; ++k) {
      // Chebyshev derivative coefficients of mode k, exact recurrence.
      std::vector<CInterval> d(std::size_t(N) + 2,
                               CInterval(Interval(0.0), Interval(0.0)));
      for (int n = N - 2; n >= 0; --n)
        d[std::size_t(n)] =
            d[std::size_t(n) + 2] +
            Interval(2.0 * (n + 1)) * detail::ci_exact(c(n + 1, k));
      d[0] = CInterval(d[0].re * 0.5, d[0].im * 0.5);
      for (int n = 0; n <= N - 2; ++n)
        dfull[std::size_t(n)][std::size_t(k)] =
            dfull[std::size_t(n)][std::size_t(k)] +
            two_over_h * d[std::size_t(n)];
      for (int n = 0; n < N; ++n) {
        CInterval mc = mu[std::size_t(k)] * detail::ci_exact(c(n, k));
        // add  -i (mu c):  -i (x + iy) = y - i x
        dfull[std::size_t(n)][std::size_t(k)] =
            dfull[std::size_t(n)][std::size_t(k)] + CInterval(mc.im, -mc.re);
      }
    }
    for (int k1 = 0; k1 < nk; ++k1)
      for (int k2 = 0; k2 < nk; ++k2)
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b) {
            CInterval w = detail::ci_exact(c(a, k1)) * detail::ci_exact(c(b, k2));
            // half the product lands on each Chebyshev image; -i flips parts
            CInterval miw(w.im * 0.5, w.re * (-0.5));
            for (int row : {a + b, a >= b ? a - b : b - a}) {
              auto& dr = dfull[std::size_t(row)];
              dr[std::size_t(k1 + k2)] = dr[std::size_t(k1 + k2)] + miw;
              if (k2 > 0 && k1 >= k2)
                dr[std::size_t(k1 - k2)] = dr[std::size_t(k1 - k2)] + miw;
              if (k1 > 0 && k2 >= k1)
                dr[std::size_t(k2 - k1)] = dr[std::size_t(k2 - k1)] + miw;
            }
          }
    Interval d0s(0.0), dinfs(0.0);
    for (int n = 0; n < nrow; ++n)
      d0s = d0s + Interval(dfull[std::size_t(n)][0].mag());
    for (int k = 1; k < ncol; ++k) {
      Interval colsum(0.0);
      for (int n = 0; n < nrow; ++n)
        colsum = colsum + Interval(dfull[std::size_t(n)][std::size_t(k)].mag());
      dinfs = dinfs + 2.0 * colsum;
    }
    cert.d0 = d0s.hi;
    cert.dinf = dinfs.hi;

    // ---- norm bounds and growth constants ------------------------------
    std::vector<Interval> colsum(std::size_t(nk), Interval(0.0));
    for (int k = 0; k < nk; ++k)
      for (int n = 0; n < N; ++n)
        colsum[std::size_t(k)] =
            colsum[std::size_t(k)] + Interval(detail::ci_exact(c(n, k)).mag());
    Interval ninf(0.0);
    double ndual_hi = 0.0;
    for (int k = 1; k < nk; ++k) {
      ninf = ninf + 2.0 * colsum[std::size_t(k)];
      ndual_hi = std::max(ndual_hi, colsum[std::size_t(k)].hi);
    }
    Interval normX = colsum[0] + ninf;
    cert.normX = normX.hi;

    // All growth constants are increasing in the norm bound, so they are
    // evaluated at its upper end (floored away from a 0/0 at zero data).
    Interval x(std::max(normX.hi, 1e-12));
    Interval egrow = exp(2.0 * hI * x);
    Interval Winf = (egrow - 1.0) / (2.0 * x);
    Interval Wbar = (Winf - hI) / (2.0 * x);
    cert.Winf = Winf.hi;
    cert.Wbar = Wbar.hi;
    cert.Wsup = egrow.hi;

    std::vector<std::complex<double>> c0col(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) c0col[std::size_t(n)] = c(n, 0);
    cert.W0 = zero_mode_growth(c0col, h);

    const Interval W0I(cert.W0);
    Interval kap = Interval(1.0) - 4.0 * W0I * Interval(Wbar.hi) *
                                       Interval(ninf.hi) * Interval(ndual_hi);
    cert.kappa = kap.lo;
    if (!(kap.lo > 0.0))
      return fail(stp, "zero-mode/tail coupling is not contracting "
                       "(step too large for this orbit norm)");
    const Interval kapI(kap.lo);
    const double u00 = (W0I / kapI).hi;
    const double u01 =
        (2.0 * W0I * Interval(Winf.hi) * Interval(ndual_hi) / kapI).hi;
    const double u10 =
        (2.0 * W0I * Interval(Winf.hi) * Interval(ninf.hi) / kapI).hi;
    const double u11 = (Interval(egrow.hi) / kapI).hi;

    // ---- effective incoming enclosure ----------------------------------
    // The contraction argument measures distances to the polynomial's own
    // initial value, so the collocation residual at tau = -1 is folded
    // into the incoming radii.
    Interval gap0(0.0), gapinf(0.0);
    for (int k = 0; k < nk; ++k) {
      CInterval s(Interval(0.0), Interval(0.0));
      for (int n = 0; n < N; ++n) {
        CInterval cn = detail::ci_exact(c(n, k));
        s = (n % 2 == 0) ? s + cn : s - cn;
      }
      CInterval diff = s - detail::ci_exact(phi[std::size_t(k)]);
      if (k == 0)
        gap0 = Interval(diff.mag());
      else
        gapinf = gapinf + 2.0 * Interval(diff.mag());
    }
    const double e0 = (Interval(e0_in) + gap0).hi;
    const double einf = (Interval(einf_in) + gapinf).hi;
    cert.eps0 = e0;
    cert.epsinf = einf;

    // ---- tube radii: Picard to a fixed point, then one rigorous check --
    double r0 = u00 * (e0 + h * cert.d0) + u01 * (einf + h * cert.dinf);
    double rinf = u10 * (e0 + h * cert.d0) + u11 * (einf + h * cert.dinf);
    for (int it = 0; it < 50; ++it) {
      double n0 = 2.0 * (r0 * r0 + rinf * rinf) + cert.d0;
      double nf = 2.0 * (r0 + rinf) * (r0 + rinf) + cert.dinf;
      double f0 = u00 * (e0 + h * n0) + u01 * (einf + h * nf);
      double finf = u10 * (e0 + h * n0) + u11 * (einf + h * nf);
      if (!std::isfinite(f0) || !std::isfinite(finf) || f0 > 1e3)
        return fail(stp, "tube radii diverged");
      double delta = std::max(std::abs(f0 - r0) / std::max(r0, 1e-300),
                              std::abs(finf - rinf) / std::max(rinf, 1e-300));
      r0 = f0;
      rinf = finf;
      if (delta < 1e-6) break;
    }
    r0 *= 1.01;
    rinf *= 1.01;
    {
      Interval r0I(r0), rinfI(rinf);
      Interval n0 = 2.0 * (sqr(r0I) + sqr(rinfI)) + Interval(cert.d0);
      Interval nf = 2.0 * sqr(r0I + rinfI) + Interval(cert.dinf);
      Interval f0 = Interval(u00) * (Interval(e0) + hI * n0) +
                    Interval(u01) * (Interval(einf) + hI * nf);
      Interval finf = Interval(u10) * (Interval(e0) + hI * n0) +
                      Interval(u11) * (Interval(einf) + hI * nf);
      if (!(f0.hi <= r0) || !(finf.hi <= rinf))
        return fail(stp, "tube radii could not be certified (rho0=" +
                             detail::fmt_sci(r0) + ", rhoinf=" +
                             detail::fmt_sci(rinf) + ")");
    }
    cert.rho0 = r0;
    cert.rhoinf = rinf;

    // ---- endpoint handoff ----------------------------------------------
    std::vector<std::complex<double>> phi_next(static_cast<std::size_t>(nk));
    Interval slop0(0.0), slopinf(0.0);
    for (int k = 0; k < nk; ++k) {
      std::complex<double> sd(0.0, 0.0);
      CInterval si(Interval(0.0), Interval(0.0));
      for (int n = 0; n < N; ++n) {
        sd += c(n, k);
        si = si + detail::ci_exact(c(n, k));
      }
      phi_next[std::size_t(k)] = sd;
      CInterval diff = si - detail::ci_exact(sd);
      if (k == 0)
        slop0 = Interval(diff.mag());
      else
        slopinf = slopinf + 2.0 * Interval(diff.mag());
    }
    e0_in = (Interval(r0) + slop0).hi;
    einf_in = (Interval(rinf) + slopinf).hi;
    phi = phi_next;

    out.steps.push_back(std::move(cert));
  }

  out.success = true;
  out.message = "certified " + std::to_string(opt.steps) + " steps";
  out.phi_end = phi;
  out.rho0_end = e0_in;
  out.rhoinf_end = einf_in;
  return out;
}

}  // namespace nlscap
