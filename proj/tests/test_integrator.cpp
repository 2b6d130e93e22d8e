// Tests for rigorous time-stepping of the mode equations.  Every step
// produces a certificate: Chebyshev coefficients of the approximate orbit
// plus radii (rho0, rhoinf) such that the true solution through the enclosed
// initial data stays inside the tube around the polynomial for the whole
// step.  Oracles used here:
//   * closed-form growth factors of the zero-mode linear flow for constant
//     and linear-in-time zero modes,
//   * direct quadrature of the integral inequalities behind the certified
//     constants, on randomly sampled (s, t) pairs,
//   * an independent high-resolution RK4 orbit (with extra dealiasing
//     modes) that must stay inside every certified tube,
//   * reference endpoint digits frozen from an independent double-precision
//     collocation implementation of the same orbit.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlscap/equilibria.hpp>
#include <nlscap/integrator.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <random>
#include <string>
#include <vector>

using nlscap::EquilibriumResult;
using nlscap::IntegrationResult;
using nlscap::IntegratorOptions;
using nlscap::StepCertificate;
using nlscap::integrate_orbit;
using nlscap::step_value;
using nlscap::validate_equilibrium;
using nlscap::zero_mode_growth;

namespace {

using cplx = std::complex<double>;

std::string seed_path(const char* name) {
  return std::string(NLSCAP_SOURCE_DIR) + "/data/seeds/" + name;
}

// Validated one-bump equilibrium, shared by all cases in this binary.
const EquilibriumResult& eq_u1i() {
  static EquilibriumResult r = [] {
    nlscap::EquilibriumInput in;
    in.seed = nlscap::read_seed(seed_path("u1i.seq"));
    in.modes = 28;
    auto out = validate_equilibrium(in);
    REQUIRE_MESSAGE(out.success, out.message);
    return out;
  }();
  return r;
}

// A genuine nearby orbit: equilibrium plus a small kick along the unstable
// eigenvector, truncated to 28 modes.  Slow dynamics, ideal for unit gates.
std::vector<cplx> kicked_ic() {
  const auto& eq = eq_u1i();
  double nb = std::abs(eq.b[0]);
  for (std::size_t k = 1; k < eq.b.size(); ++k) nb += 2.0 * std::abs(eq.b[k]);
  std::vector<cplx> phi(eq.a.begin(), eq.a.end());
  for (std::size_t k = 0; k < phi.size(); ++k) phi[k] += 0.05 * eq.b[k] / nb;
  return phi;
}

IntegratorOptions unit_opts() {
  IntegratorOptions opt;
  opt.coeffs = 13;
  opt.step = 2.5e-3;
  opt.steps = 20;
  opt.eps0 = 1e-12;
  opt.epsinf = 1e-12;
  return opt;
}

// Twenty certified steps of the kicked orbit, shared by several cases.
const IntegrationResult& kicked_run() {
  static IntegrationResult r = [] {
    auto out = integrate_orbit(kicked_ic(), unit_opts());
    REQUIRE_MESSAGE(out.success, out.message);
    return out;
  }();
  return r;
}

double norm_zero(const std::vector<cplx>& v) { return std::abs(v[0]); }

double norm_tail(const std::vector<cplx>& v) {
  double s = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) s += 2.0 * std::abs(v[k]);
  return s;
}

// Symmetric cosine-basis product fold, written out independently of the
// library's convolution.
std::vector<cplx> fold_sq(const std::vector<cplx>& a) {
  int n = int(a.size());
  std::vector<cplx> out(n, cplx(0.0, 0.0));
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      cplx pr = a[k1] * a[k2];
      if (k1 + k2 < n) out[k1 + k2] += pr;
      if (k2 > 0 && k1 >= k2) out[k1 - k2] += pr;
      if (k1 > 0 && k2 >= k1) out[k2 - k1] += pr;
    }
  return out;
}

// Right-hand side of the mode ODEs, du/dt = i(mu u + u*u).
std::vector<cplx> ode_rhs(const std::vector<cplx>& a) {
  int n = int(a.size());
  std::vector<cplx> f = fold_sq(a);
  for (int k = 0; k < n; ++k) {
    double mu = -(2.0 * M_PI * k) * (2.0 * M_PI * k);
    f[k] = cplx(0.0, 1.0) * (mu * a[k] + f[k]);
  }
  return f;
}

void rk4_step(std::vector<cplx>& a, double dt) {
  int n = int(a.size());
  auto k1 = ode_rhs(a);
  std::vector<cplx> t(n);
  for (int i = 0; i < n; ++i) t[i] = a[i] + 0.5 * dt * k1[i];
  auto k2 = ode_rhs(t);
  for (int i = 0; i < n; ++i) t[i] = a[i] + 0.5 * dt * k2[i];
  auto k3 = ode_rhs(t);
  for (int i = 0; i < n; ++i) t[i] = a[i] + dt * k3[i];
  auto k4 = ode_rhs(t);
  for (int i = 0; i < n; ++i)
    a[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

TEST_CASE("zero-mode growth factors match closed forms") {
  int N = 13;
  std::vector<cplx> c0(N, cplx(0.0, 0.0));

  SUBCASE("zero input gives no growth at all") {
    for (double h : {0.1, 0.025, 2.5e-3}) {
      double w = zero_mode_growth(c0, h);
      CHECK(w >= 1.0);
      CHECK(w <= 1.0 + 1e-12);
    }
  }

  SUBCASE("a real constant zero mode produces no modulus growth") {
    c0[0] = cplx(0.04, 0.0);
    double w = zero_mode_growth(c0, 0.1);
    CHECK(w >= 1.0);
    CHECK(w <= 1.0 + 1e-6);
    CHECK(w <= 1.01);
  }

  SUBCASE("a positive imaginary constant only contracts") {
    c0[0] = cplx(0.0, 0.04);
    double w = zero_mode_growth(c0, 0.1);
    CHECK(w >= 1.0);
    CHECK(w <= 1.0 + 1e-4);
    CHECK(w <= 1.01);
  }

  SUBCASE("a negative imaginary constant grows like the exact flow") {
    c0[0] = cplx(0.0, -0.04);
    for (double h : {0.1, 0.05}) {
      double exact = std::exp(2.0 * 0.04 * h);
      double w = zero_mode_growth(c0, h);
      CHECK(w >= exact * (1.0 - 1e-12));
      CHECK(w <= exact * (1.0 + 1e-4));
      CHECK(w <= 1.01);
    }
  }

  SUBCASE("a linear-in-time imaginary part dips mid-step") {
    // a0(s) = 0.04 i (2s/h - 1); its imaginary antiderivative reaches its
    // minimum -0.01 h halfway, so the worst pair (s, t) gives exp(0.02 h).
    c0[1] = cplx(0.0, 0.04);
    double h = 0.1;
    double exact = std::exp(2.0 * 0.04 * h / 4.0);
    double w = zero_mode_growth(c0, h);
    CHECK(w >= exact * (1.0 - 1e-12));
    CHECK(w <= exact * (1.0 + 1e-4));
  }
}

TEST_CASE("sampled integral inequalities hold against the certified constants") {
  IntegratorOptions opt = unit_opts();
  opt.steps = 1;
  auto run = integrate_orbit(kicked_ic(), opt);
  REQUIRE_MESSAGE(run.success, run.message);
  const StepCertificate& s0 = run.steps.at(0);
  double h = run.step;

  CHECK(s0.W0 >= 1.0);
  CHECK(s0.kappa > 0.0);
  CHECK(s0.kappa <= 1.0);
  CHECK(s0.Wsup >= 1.0);
  CHECK(s0.Winf >= h);

  // Dense grid of the orbit's instantaneous norm and zero-mode data.
  const int G = 8000;
  std::vector<double> X(G + 1), im0(G + 1);
  for (int i = 0; i <= G; ++i) {
    double tau = -1.0 + 2.0 * double(i) / G;
    auto v = step_value(s0, tau);
    X[i] = norm_zero(v) + norm_tail(v);
    im0[i] = v[0].imag();
  }
  double dt = h / G;
  std::vector<double> cumX(G + 1, 0.0), cumIm(G + 1, 0.0);
  for (int i = 1; i <= G; ++i) {
    cumX[i] = cumX[i - 1] + 0.5 * dt * (X[i - 1] + X[i]);
    cumIm[i] = cumIm[i - 1] + 0.5 * dt * (im0[i - 1] + im0[i]);
  }
  double xsup = *std::max_element(X.begin(), X.end());
  CHECK(xsup <= s0.normX * (1.0 + 1e-12));

  std::mt19937 rng(20250819u);
  std::uniform_int_distribution<int> pick(0, G);
  for (int trial = 0; trial < 1000; ++trial) {
    // Trial 0 pins the degenerate pair s == t, the worst case for W0.
    int i = trial == 0 ? G / 2 : pick(rng);
    int j = trial == 0 ? G / 2 : pick(rng);
    if (i > j) std::swap(i, j);
    double delta = (j - i) * dt;

    // Supremum-type growth of the full linear flow.
    double grow = std::exp(2.0 * (cumX[j] - cumX[i]));
    CHECK(grow <= s0.Wsup * (1.0 + 1e-9));

    // 2x2 system: the zero-mode propagator modulus never exceeds W0.
    double phi = std::exp(-2.0 * (cumIm[j] - cumIm[i]));
    CHECK(phi <= s0.W0 * (1.0 + 1e-9));

    // Duhamel-type integral of the growth kernel stays below Winf.
    double acc = 0.0;
    for (int r = i; r < j; ++r) {
      double f0 = std::exp(2.0 * (cumX[j] - cumX[r]));
      double f1 = std::exp(2.0 * (cumX[j] - cumX[r + 1]));
      acc += 0.5 * dt * (f0 + f1);
    }
    CHECK(acc <= s0.Winf * (1.0 + 1e-9));

    // Doubly integrated kernel at the measured norm stays below Wbar.
    double xs = std::max(xsup, 1e-300);
    double dbl = ((std::exp(2.0 * xs * delta) - 1.0) / (2.0 * xs) - delta) /
                 (2.0 * xs);
    CHECK(dbl <= s0.Wbar * (1.0 + 1e-9));
  }
}

TEST_CASE("twenty certified steps of a kicked equilibrium orbit") {
  const IntegrationResult& run = kicked_run();
  REQUIRE(run.steps.size() == 20);
  CHECK(run.modes == 28);
  CHECK(run.coeffs == 13);

  for (const auto& st : run.steps) {
    CHECK(st.newton_residual <= 1e-10);
    CHECK(st.d0 <= 1e-10);
    CHECK(st.dinf <= 1e-9);
    CHECK(st.W0 >= 1.0);
    CHECK(st.W0 <= 1.0001);
    CHECK(st.kappa >= 0.99);
    CHECK(st.normX >= 57.0);
    CHECK(st.normX <= 58.0);
    CHECK(st.rho0 > 0.0);
    CHECK(st.rhoinf > 0.0);
    CHECK(st.rho0 <= 1e-8);
    CHECK(st.rhoinf <= 1e-8);
  }

  // Enclosures can only widen along the orbit.
  for (std::size_t i = 1; i < run.steps.size(); ++i) {
    CHECK(run.steps[i].eps0 >= run.steps[i - 1].eps0);
    CHECK(run.steps[i].epsinf >= run.steps[i - 1].epsinf);
  }

  // Endpoint digits frozen from an independent double-precision
  // collocation implementation of the same twenty steps.
  REQUIRE(run.phi_end.size() == 29);
  cplx ref(21.830023434806193, 0.07938077691622425);
  CHECK(std::abs(run.phi_end[0] - ref) <= 1e-8);
  CHECK(run.rho0_end <= 1e-8);
  CHECK(run.rhoinf_end <= 1e-8);
  CHECK(run.rho0_end >= run.steps.back().rho0);
  CHECK(run.rhoinf_end >= run.steps.back().rhoinf);

  // The certified endpoint matches the last polynomial's endpoint value.
  auto end_val = step_value(run.steps.back(), 1.0);
  for (std::size_t k = 0; k < run.phi_end.size(); ++k)
    CHECK(std::abs(end_val[k] - run.phi_end[k]) <= 1e-13);
}

TEST_CASE("an independent high-resolution orbit stays inside every tube") {
  const IntegrationResult& run = kicked_run();
  double h = run.step;

  // Reference orbit with eight extra modes so that truncation feedback is
  // far below the certified radii; RK4 substep resolves the stiffest mode.
  auto phi = kicked_ic();
  std::vector<cplx> ref(phi.begin(), phi.end());
  ref.resize(phi.size() + 8, cplx(0.0, 0.0));
  const int sub = 400;
  double dt = h / sub;

  for (const auto& st : run.steps) {
    // Entering the step, the reference must sit inside the incoming
    // enclosure around the step's own initial polynomial value.
    auto start_val = step_value(st, -1.0);
    double e0 = std::abs(ref[0] - start_val[0]);
    double einf = 0.0;
    for (std::size_t k = 1; k < ref.size(); ++k) {
      cplx pk = k < start_val.size() ? start_val[k] : cplx(0.0, 0.0);
      einf += 2.0 * std::abs(ref[k] - pk);
    }
    CHECK(e0 <= st.eps0 * (1.0 + 1e-6) + 1e-12);
    CHECK(einf <= st.epsinf * (1.0 + 1e-6) + 1e-12);

    for (int q = 0; q < 4; ++q) {
      for (int i = 0; i < sub / 4; ++i) rk4_step(ref, dt);
      double tau = -1.0 + 2.0 * double(q + 1) / 4.0;
      auto pv = step_value(st, tau);
      double d0 = std::abs(ref[0] - pv[0]);
      double dinf = 0.0;
      for (std::size_t k = 1; k < ref.size(); ++k) {
        cplx pk = k < pv.size() ? pv[k] : cplx(0.0, 0.0);
        dinf += 2.0 * std::abs(ref[k] - pk);
      }
      CHECK(d0 <= st.rho0 * (1.0 + 1e-6) + 1e-12);
      CHECK(dinf <= st.rhoinf * (1.0 + 1e-6) + 1e-12);
    }
  }

  // And the final handoff still contains the reference endpoint.
  double f0 = std::abs(ref[0] - run.phi_end[0]);
  double finf = 0.0;
  for (std::size_t k = 1; k < ref.size(); ++k) {
    cplx pk = k < run.phi_end.size() ? run.phi_end[k] : cplx(0.0, 0.0);
    finf += 2.0 * std::abs(ref[k] - pk);
  }
  CHECK(f0 <= run.rho0_end * (1.0 + 1e-6) + 1e-12);
  CHECK(finf <= run.rhoinf_end * (1.0 + 1e-6) + 1e-12);
}

TEST_CASE("integration is bitwise deterministic") {
  IntegratorOptions opt = unit_opts();
  opt.steps = 5;
  auto r1 = integrate_orbit(kicked_ic(), opt);
  auto r2 = integrate_orbit(kicked_ic(), opt);
  REQUIRE(r1.success);
  REQUIRE(r2.success);
  REQUIRE(r1.steps.size() == r2.steps.size());
  for (std::size_t i = 0; i < r1.steps.size(); ++i) {
    CHECK(std::memcmp(&r1.steps[i].rho0, &r2.steps[i].rho0, sizeof(double)) == 0);
    CHECK(std::memcmp(&r1.steps[i].rhoinf, &r2.steps[i].rhoinf,
                      sizeof(double)) == 0);
    CHECK(std::memcmp(&r1.steps[i].d0, &r2.steps[i].d0, sizeof(double)) == 0);
  }
  REQUIRE(r1.phi_end.size() == r2.phi_end.size());
  CHECK(std::memcmp(r1.phi_end.data(), r2.phi_end.data(),
                    r1.phi_end.size() * sizeof(cplx)) == 0);
}

TEST_CASE("degenerate inputs are rejected") {
  auto phi = kicked_ic();

  SUBCASE("structural garbage throws") {
    IntegratorOptions opt = unit_opts();
    CHECK_THROWS(integrate_orbit({}, opt));
    opt.coeffs = 2;
    CHECK_THROWS(integrate_orbit(phi, opt));
    opt = unit_opts();
    opt.step = 0.0;
    CHECK_THROWS(integrate_orbit(phi, opt));
    opt = unit_opts();
    opt.steps = 0;
    CHECK_THROWS(integrate_orbit(phi, opt));
    opt = unit_opts();
    opt.eps0 = -1e-9;
    CHECK_THROWS(integrate_orbit(phi, opt));
    auto bad = phi;
    bad[3] = cplx(std::nan(""), 0.0);
    CHECK_THROWS(integrate_orbit(bad, unit_opts()));
  }

  SUBCASE("a step far beyond the contraction regime fails cleanly") {
    IntegratorOptions opt = unit_opts();
    opt.steps = 1;
    opt.step = 0.05;
    auto out = integrate_orbit(phi, opt);
    CHECK_FALSE(out.success);
    CHECK_FALSE(out.message.empty());
  }
}
