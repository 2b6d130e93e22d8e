#pragma once
// Validated equilibria of u_xx + u^2 on the 2*pi-periodic torus, together
// with a rigorously enclosed unstable eigenpair of the linearized flow
// v_t = i (v_xx + 2 u v).
//
// The unknown x = (lambda, a, b) collects the eigenvalue, the cosine
// coefficients of the equilibrium profile and those of the eigenvector,
// the latter normalized by pinning its largest coefficient to 1.  A
// floating-point Newton iteration polishes a seed; a radii-polynomial
// argument on C x l1nu x l1nu (max norm across the three factors) then
// produces a radius r0 such that a true solution lies within r0 of the
// numerical one.  The approximate inverse acts diagonally beyond the
// computed window, where the derivative is dominated by the Laplacian
// symbol mu_k = -(2 pi k)^2.

#include <nlscap/interval.hpp>
#include <nlscap/radii.hpp>
#include <nlscap/sequence.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlscap {

struct EquilibriumInput {
  std::vector<std::complex<double>> seed;  // cosine coefficients, any length
  int modes = 28;                          // validation window 0..modes
  double nu = 1.0;                         // weight of the sequence space
};

struct EquilibriumResult {
  bool success = false;
  std::string message;
  int modes = 0;
  int k0 = -1;  // index of the pinned eigenvector coefficient
  double nu = 1.0;
  std::complex<double> lambda{};
  std::vector<std::complex<double>> a;  // equilibrium coefficients, 0..modes
  std::vector<std::complex<double>> b;  // eigenvector, b[k0] = 1
  double r0 = 0.0;                      // validated enclosure radius
  RadiiBounds bounds{};
  double newton_residual = 0.0;
};

// Reads "index re im" rows, '#' comments allowed.  Indices must be 0,1,2,...
inline std::vector<std::complex<double>> read_seed(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open seed file: " + path);
  std::vector<std::complex<double>> out;
  std::string line;
  long expect = 0;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    long k = -1;
    double re = 0.0, im = 0.0;
    if (!(ss >> k >> re >> im) || k != expect)
      throw std::runtime_error("malformed seed row in " + path + ": " + line);
    out.emplace_back(re, im);
    ++expect;
  }
  if (out.empty()) throw std::runtime_error("seed file has no data: " + path);
  return out;
}

namespace detail {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Grid = std::vector<std::vector<CInterval>>;

inline double mu_point(int k) {
  const double w = 2.0 * 3.141592653589793;
  return -(w * k) * (w * k);
}

inline Interval mu_enclosure(int k) {
  return -(Interval(double(4 * k * k)) * sqr(pi_interval()));
}

// (a*b)_k over the symmetric lattice, for point data with window supports.
inline CVec conv_point(const CVec& a, const CVec& b, int kout) {
  const int ka = int(a.size()) - 1, kb = int(b.size()) - 1;
  CVec c = CVec::Zero(kout + 1);
  for (int k = 0; k <= kout; ++k) {
    std::complex<double> s{};
    for (int j = -ka; j <= ka; ++j) {
      const int l = k - j;
      if (std::abs(l) <= kb) s += a[std::abs(j)] * b[std::abs(l)];
    }
    c[k] = s;
  }
  return c;
}

// Matrix of b |-> a*b on windows 0..K (point data).
inline CMat conv_op_point(const CVec& a, int K) {
  const int ka = int(a.size()) - 1;
  auto at = [&](int i) {
    return i <= ka ? a[i] : std::complex<double>{};
  };
  CMat T = CMat::Zero(K + 1, K + 1);
  for (int k = 0; k <= K; ++k)
    for (int j = 0; j <= K; ++j) {
      std::complex<double> v = at(std::abs(k - j));
      if (j > 0) v += at(k + j);
      T(k, j) = v;
    }
  return T;
}

inline CInterval ci_of(const std::complex<double>& z) {
  return CInterval(Interval(z.real()), Interval(z.imag()));
}

// Operator norm on C x l1nu x l1nu (max norm) of a bordered matrix over the
// window, with scalar bounds tail_a / tail_b for the diagonal action beyond
// the window on the two sequence factors.
inline double bordered_norm(const Grid& G, int m, double nu, double tail_a,
                            double tail_b) {
  const int n1 = m + 1;
  auto seq_block = [&](int r, int c, double tail) {
    double best = tail;
    for (int j = 0; j <= m; ++j) {
      Interval cs(0.0);
      for (int k = 0; k <= m; ++k)
        cs += weight(k, nu) * Interval(G[size_t(r + k)][size_t(c + j)].mag());
      best = std::max(best, (cs / weight(j, nu)).hi);
    }
    return best;
  };
  auto col_block = [&](int r) {
    Interval cs(0.0);
    for (int k = 0; k <= m; ++k)
      cs += weight(k, nu) * Interval(G[size_t(r + k)][0].mag());
    return cs.hi;
  };
  auto dual_block = [&](int c) {
    double best = 0.0;
    for (int j = 0; j <= m; ++j)
      best = std::max(best,
                      (Interval(G[0][size_t(c + j)].mag()) / weight(j, nu)).hi);
    return best;
  };
  double row_l = (Interval(G[0][0].mag()) + Interval(dual_block(1)) +
                  Interval(dual_block(1 + n1)))
                     .hi;
  double row_a = (Interval(col_block(1)) + Interval(seq_block(1, 1, tail_a)) +
                  Interval(seq_block(1, 1 + n1, 0.0)))
                     .hi;
  double row_b = (Interval(col_block(1 + n1)) +
                  Interval(seq_block(1 + n1, 1, 0.0)) +
                  Interval(seq_block(1 + n1, 1 + n1, tail_b)))
                     .hi;
  return std::max({row_l, row_a, row_b});
}

}  // namespace detail

inline EquilibriumResult validate_equilibrium(const EquilibriumInput& in) {
  using detail::CMat;
  using detail::CVec;
  const std::complex<double> iu(0.0, 1.0);

  EquilibriumResult out;
  out.modes = in.modes;
  out.nu = in.nu;
  const int m = in.modes;
  if (m < 4) {
    out.message = "mode count too small";
    return out;
  }
  if (in.nu < 1.0) {
    out.message = "weight nu must be at least 1";
    return out;
  }
  if (in.seed.empty()) {
    out.message = "empty seed";
    return out;
  }
  const int n1 = m + 1;

  // ---- floating-point phase: polish the profile ------------------------
  CVec a = CVec::Zero(n1);
  for (int k = 0; k < n1 && k < int(in.seed.size()); ++k) a[k] = in.seed[k];
  CVec mu(n1);
  for (int k = 0; k < n1; ++k) mu[k] = detail::mu_point(k);

  auto profile_res = [&](const CVec& v) {
    CVec F = detail::conv_point(v, v, m);
    for (int k = 0; k < n1; ++k) F[k] += mu[k] * v[k];
    return F;
  };
  double res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 40; ++it) {
    CVec F = profile_res(a);
    res = F.cwiseAbs().maxCoeff();
    if (!std::isfinite(res)) break;
    if (res <= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) break;
    CMat J = 2.0 * detail::conv_op_point(a, m);
    J.diagonal() += mu;
    a -= J.partialPivLu().solve(F);
  }
  res = profile_res(a).cwiseAbs().maxCoeff();
  if (!std::isfinite(res) ||
      res > 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    out.message = "profile Newton did not converge";
    return out;
  }

  // ---- spectral phase: locate the unstable direction -------------------
  CMat C = 2.0 * detail::conv_op_point(a, m);
  C.diagonal() += mu;
  Eigen::ComplexEigenSolver<CMat> es(C);
  if (es.info() != Eigen::Success) {
    out.message = "eigensolver failed";
    return out;
  }
  const double thr = 1e-9 * std::max(1.0, C.cwiseAbs().maxCoeff());
  int i0 = -1, unstable = 0;
  for (int i = 0; i < n1; ++i) {
    const double growth = -es.eigenvalues()[i].imag();  // Re of i * eig
    if (growth > thr) {
      ++unstable;
      if (i0 < 0 || growth > -es.eigenvalues()[i0].imag()) i0 = i;
    }
  }
  if (unstable != 1) {
    out.message = "expected exactly one unstable eigenvalue, found " +
                  std::to_string(unstable);
    return out;
  }
  std::complex<double> lam = iu * es.eigenvalues()[i0];
  CVec b = es.eigenvectors().col(i0);
  int k0 = 0;
  for (int k = 1; k < n1; ++k)
    if (std::abs(b[k]) > std::abs(b[k0])) k0 = k;
  b /= b[k0];

  // ---- joint Newton on (lambda, a, b) -----------------------------------
  const int n = 2 * m + 3;
  auto full_res = [&](const std::complex<double>& l, const CVec& av,
                      const CVec& bv) {
    CVec F(n);
    F[0] = bv[k0] - 1.0;
    CVec aa = detail::conv_point(av, av, m);
    CVec ab = detail::conv_point(av, bv, m);
    for (int k = 0; k < n1; ++k) {
      F[1 + k] = mu[k] * av[k] + aa[k];
      F[1 + n1 + k] = iu * (mu[k] * bv[k] + 2.0 * ab[k]) - l * bv[k];
    }
    return F;
  };
  auto assemble_jacobian = [&]() {
    CMat J = CMat::Zero(n, n);
    CMat Ta = detail::conv_op_point(a, m);
    CMat Tb = detail::conv_op_point(b, m);
    J(0, 1 + n1 + k0) = 1.0;
    J.block(1, 1, n1, n1) = 2.0 * Ta;
    J.block(1, 1, n1, n1).diagonal() += mu;
    J.block(1 + n1, 0, n1, 1) = -b;
    J.block(1 + n1, 1, n1, n1) = 2.0 * iu * Tb;
    J.block(1 + n1, 1 + n1, n1, n1) = 2.0 * iu * Ta;
    for (int k = 0; k < n1; ++k) J(1 + n1 + k, 1 + n1 + k) += iu * mu[k] - lam;
    return J;
  };
  for (int it = 0; it < 30; ++it) {
    CVec F = full_res(lam, a, b);
    const double r = F.cwiseAbs().maxCoeff();
    if (!std::isfinite(r)) break;
    const double scale =
        std::max({1.0, a.cwiseAbs().maxCoeff(), std::abs(lam)});
    if (r <= 1e-12 * scale) break;
    CVec dx = assemble_jacobian().partialPivLu().solve(F);
    lam -= dx[0];
    for (int k = 0; k < n1; ++k) {
      a[k] -= dx[1 + k];
      b[k] -= dx[1 + n1 + k];
    }
  }
  b /= b[k0];  // re-pin the normalization exactly
  out.newton_residual = full_res(lam, a, b).cwiseAbs().maxCoeff();
  if (!std::isfinite(out.newton_residual) ||
      out.newton_residual >
          1e-8 * std::max({1.0, a.cwiseAbs().maxCoeff(), std::abs(lam)})) {
    out.message = "joint Newton did not converge";
    return out;
  }

  // ---- rigorous phase ----------------------------------------------------
  CosineSeq abar, bbar;
  abar.nu = bbar.nu = in.nu;
  abar.coef.resize(size_t(n1));
  bbar.coef.resize(size_t(n1));
  for (int k = 0; k < n1; ++k) {
    abar.coef[size_t(k)] = detail::ci_of(a[k]);
    bbar.coef[size_t(k)] = detail::ci_of(b[k]);
  }
  const CInterval lam_iv = detail::ci_of(lam);

  // Derivative at the numerical point, with rigorous entries.
  detail::Grid Ta_iv = conv_matrix(abar, m);
  detail::Grid Tb_iv = conv_matrix(bbar, m);
  detail::Grid DF;
  DF.assign(size_t(n), std::vector<CInterval>(size_t(n)));
  DF[0][size_t(1 + n1 + k0)] = CInterval(1.0, 0.0);
  for (int k = 0; k < n1; ++k) {
    DF[size_t(1 + n1 + k)][0] = -detail::ci_of(b[k]);
    for (int j = 0; j < n1; ++j) {
      CInterval f1a = 2.0 * Ta_iv[size_t(k)][size_t(j)];
      CInterval f2b = mul_i(2.0 * Ta_iv[size_t(k)][size_t(j)]);
      if (k == j) {
        const CInterval muk(detail::mu_enclosure(k), Interval(0.0));
        f1a += muk;
        f2b += mul_i(muk) - lam_iv;
      }
      DF[size_t(1 + k)][size_t(1 + j)] = f1a;
      DF[size_t(1 + n1 + k)][size_t(1 + j)] =
          mul_i(2.0 * Tb_iv[size_t(k)][size_t(j)]);
      DF[size_t(1 + n1 + k)][size_t(1 + n1 + j)] = f2b;
    }
  }

  // Numerical inverse of the bordered Jacobian; exact as interval data.
  CMat A = assemble_jacobian().inverse();
  if (!A.allFinite()) {
    out.message = "bordered Jacobian is numerically singular";
    return out;
  }
  detail::Grid Ag;
  Ag.assign(size_t(n), std::vector<CInterval>(size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Ag[size_t(i)][size_t(j)] = detail::ci_of(A(i, j));

  // Z0: defect of the approximate inverse on the window (tails cancel).
  detail::Grid R;
  R.assign(size_t(n), std::vector<CInterval>(size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CInterval s = (i == j) ? CInterval(1.0, 0.0) : CInterval{};
      for (int k = 0; k < n; ++k)
        s -= Ag[size_t(i)][size_t(k)] * DF[size_t(k)][size_t(j)];
      R[size_t(i)][size_t(j)] = s;
    }
  const double Z0 = detail::bordered_norm(R, m, in.nu, 0.0, 0.0);

  // Y0: residual of the numerical solution through the approximate inverse.
  CosineSeq aa = conv(abar, abar);  // support 0..2m
  CosineSeq ab = conv(abar, bbar);
  std::vector<CInterval> Fw;
  Fw.resize(size_t(n));
  Fw[0] = detail::ci_of(b[k0]) - CInterval(1.0, 0.0);
  for (int k = 0; k < n1; ++k) {
    const CInterval muk(detail::mu_enclosure(k), Interval(0.0));
    Fw[size_t(1 + k)] = muk * abar.coef[size_t(k)] + aa.coef[size_t(k)];
    Fw[size_t(1 + n1 + k)] =
        mul_i(muk * bbar.coef[size_t(k)] + 2.0 * ab.coef[size_t(k)]) -
        lam_iv * bbar.coef[size_t(k)];
  }
  Interval comp_l(0.0), comp_a(0.0), comp_b(0.0);
  for (int i = 0; i < n; ++i) {
    CInterval s{};
    for (int j = 0; j < n; ++j) s += Ag[size_t(i)][size_t(j)] * Fw[size_t(j)];
    const Interval mag_i(s.mag());
    if (i == 0)
      comp_l += mag_i;
    else if (i <= m + 1)
      comp_a += weight(i - 1, in.nu) * mag_i;
    else
      comp_b += weight(i - 2 - m, in.nu) * mag_i;
  }
  for (int k = m + 1; k <= 2 * m; ++k) {
    const Interval inv_mu = 1.0 / abs(detail::mu_enclosure(k));
    comp_a += weight(k, in.nu) * Interval(aa.coef[size_t(k)].mag()) * inv_mu;
    comp_b +=
        weight(k, in.nu) * Interval(ab.coef[size_t(k)].mag()) * 2.0 * inv_mu;
  }
  const double Y0 = std::max({comp_l.hi, comp_a.hi, comp_b.hi});

  // Z1: window-to-tail couplings of the convolution, the tail of the
  // derivative beyond the window, and the eigenvalue shift on the tail.
  std::vector<double> z1(size_t(n1), 0.0), z2(size_t(n1), 0.0);
  for (int j = 0; j < n1; ++j) {
    const double pa = psi_bound(abar, j, m);
    const double pb = psi_bound(bbar, j, m);
    z1[size_t(j)] = (Interval(pa) * 2.0).hi;
    z2[size_t(j)] = (Interval(pa) * 2.0 + Interval(pb) * 2.0).hi;
  }
  Interval row_l(0.0), row_a(0.0), row_b(0.0);
  for (int j = 0; j < n1; ++j) {
    row_l += Interval(Ag[0][size_t(1 + j)].mag()) * z1[size_t(j)] +
             Interval(Ag[0][size_t(1 + n1 + j)].mag()) * z2[size_t(j)];
  }
  for (int k = 0; k < n1; ++k) {
    Interval ra(0.0), rb(0.0);
    for (int j = 0; j < n1; ++j) {
      ra += Interval(Ag[size_t(1 + k)][size_t(1 + j)].mag()) * z1[size_t(j)] +
            Interval(Ag[size_t(1 + k)][size_t(1 + n1 + j)].mag()) *
                z2[size_t(j)];
      rb += Interval(Ag[size_t(1 + n1 + k)][size_t(1 + j)].mag()) *
                z1[size_t(j)] +
            Interval(Ag[size_t(1 + n1 + k)][size_t(1 + n1 + j)].mag()) *
                z2[size_t(j)];
    }
    row_a += weight(k, in.nu) * ra;
    row_b += weight(k, in.nu) * rb;
  }
  const Interval inv_mu_tail =
      1.0 / (Interval(double(4 * (m + 1) * (m + 1))) * sqr(pi_interval()));
  const Interval na(norm_upper(abar)), nb(norm_upper(bbar));
  row_a += na * 2.0 * inv_mu_tail;
  row_b += (na * 2.0 + nb * 2.0 + Interval(lam_iv.mag())) * inv_mu_tail;
  const double Z1 = std::max({row_l.hi, row_a.hi, row_b.hi});

  // Z2: second derivative is the fixed bilinear convolution structure; its
  // norm is at most 6 on the unit ball, so 6 ||A|| dominates the curvature.
  const double Anorm =
      detail::bordered_norm(Ag, m, in.nu, inv_mu_tail.hi, inv_mu_tail.hi);
  const double Z2 = (Interval(Anorm) * 6.0).hi;

  out.bounds = RadiiBounds{Y0, Z0, Z1, Z2};
  const RadiiResult rr = solve_radii(out.bounds);
  if (!rr.success) {
    out.message = "radii polynomial has no verified root";
    return out;
  }
  out.success = true;
  out.r0 = rr.radius;
  out.k0 = k0;
  out.lambda = lam;
  out.a.assign(a.data(), a.data() + n1);
  out.b.assign(b.data(), b.data() + n1);
  return out;
}

}  // namespace nlscap
