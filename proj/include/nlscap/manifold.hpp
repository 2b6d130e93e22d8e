#pragma once
// Validated local unstable manifold attached to a validated equilibrium.
//
// The one-dimensional unstable manifold of an equilibrium of
// u_t = i(u_xx + u^2) on the 2*pi-periodic torus, in cosine coefficient
// space, is parameterized by a power series
//
//     P(sigma) = sum_{m>=0} p_m sigma^m,   |sigma| <= 1,
//
// with p_0 the equilibrium, p_1 a scaled unstable eigenvector, and higher
// orders determined by conjugacy to the linear flow sigma |-> e^{lambda t}
// sigma: order m solves mu_{k,m} p_{k,m} - i (p*p)_{k,m} = 0 with symbol
// mu_{k,m} = lambda m + i k^2 w^2, w^2 = 4 pi^2.
//
// The returned radius rp bounds the distance between the computed series
// and a true one in the norm sum_m |p_m|_nu (weighted l1 in each order);
// since |sigma^m| <= 1 on the closed unit disk, the same rp bounds the
// chart error |P(sigma) - P~(sigma)|_nu uniformly on the disk.  The bound
// comes from a radii polynomial for a Newton-like operator whose
// approximate inverse is the numerically inverted derivative on the window
// (orders <= M, modes <= K) extended by the exact diagonal 1/mu_{k,m}
// beyond it, with identity action on the two data rows.  All data error
// enters through the validation radius r0 of the equilibrium stage: the
// eigenvalue is treated as a box of that radius and the two data rows
// contribute r0-proportional residuals.

#include <nlscap/equilibria.hpp>
#include <nlscap/interval.hpp>
#include <nlscap/interval_matrix.hpp>
#include <nlscap/radii.hpp>
#include <nlscap/sequence.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlscap {

struct ManifoldInput {
  std::complex<double> lambda{};         // unstable eigenvalue (Re > 0)
  std::vector<std::complex<double>> a;   // equilibrium coefficients
  std::vector<std::complex<double>> b;   // eigenvector coefficients
  double r0 = 0.0;         // validation radius covering lambda, a and b
  int K = 27;              // mode window 0..K
  int M = 150;             // order window 0..M
  double nu = 1.0;         // weight of the coefficient norm
  double scale_l2 = 20.0;  // requested l2 norm of the first-order data
  double theta = 0.0;      // rotation of the first-order data
};

inline ManifoldInput manifold_input(const EquilibriumResult& eq, int K, int M,
                                    double scale_l2 = 20.0,
                                    double theta = 0.0) {
  ManifoldInput in;
  in.lambda = eq.lambda;
  in.a = eq.a;
  in.b = eq.b;
  in.r0 = eq.r0;
  in.K = K;
  in.M = M;
  in.nu = eq.nu;
  in.scale_l2 = scale_l2;
  in.theta = theta;
  return in;
}

struct ManifoldResult {
  bool success = false;
  std::string message;
  int K = 0;
  int M = 0;
  double nu = 1.0;
  double theta = 0.0;
  double scale = 0.0;  // applied eigenvector scaling
  std::complex<double> lambda{};
  double lambda_r0 = 0.0;  // radius of the eigenvalue box used
  std::vector<std::vector<std::complex<double>>> p;  // orders 0..M, modes 0..K
  double rp = 0.0;  // uniform chart enclosure radius
  RadiiBounds bounds{};
  double norm_X = 0.0;    // upper bound for sum_m |p_m|_nu
  double alpha_op = 0.0;  // operator norm bound of the approximate inverse
  double mu_star = 0.0;   // smallest symbol magnitude beyond the mode window
};

// Value of the chart at one parameter: coefficient enclosures of the
// series at sigma, plus the uniform error err in the weighted-l1 norm
// (the distance to the true manifold point).
struct ManifoldPoint {
  std::vector<CInterval> coef;
  double err = 0.0;
};

namespace detail {

// Center and covering-disk radius of a rectangular enclosure.
inline void to_disk(const CInterval& z, std::complex<double>& mid,
                    double& rad) {
  const double mr = 0.5 * (z.re.lo + z.re.hi);
  const double mi = 0.5 * (z.im.lo + z.im.hi);
  const double rr = std::max(next_up(z.re.hi - mr), next_up(mr - z.re.lo));
  const double ri = std::max(next_up(z.im.hi - mi), next_up(mi - z.im.lo));
  mid = {mr, mi};
  if (rr == 0.0 && ri == 0.0) {
    rad = 0.0;
    return;
  }
  // outward rounding can push the sum's lower end a step below zero
  const Interval s = sqr(Interval(rr)) + sqr(Interval(ri));
  rad = sqrt(Interval(std::max(0.0, s.lo), s.hi)).hi;
}

// Exact multiplication by -2i: (-2i)(x+iy) = 2y - 2ix.
inline CInterval times_minus_2i(const CInterval& z) {
  return CInterval{2.0 * z.im, -(2.0 * z.re)};
}

}  // namespace detail

inline ManifoldResult validate_manifold(const ManifoldInput& in) {
  using cplx = std::complex<double>;
  using detail::ci_of;
  using Eigen::MatrixXcd;
  using Eigen::MatrixXd;

  ManifoldResult out;
  out.K = in.K;
  out.M = in.M;
  out.nu = in.nu;
  out.theta = in.theta;
  out.lambda = in.lambda;
  auto fail = [&](const std::string& why) {
    out.success = false;
    out.message = why;
    return out;
  };

  // ---- input sanity ------------------------------------------------------
  if (in.K < 2) return fail("mode window too small");
  if (in.M < 2) return fail("need at least the quadratic order");
  if (in.nu < 1.0) return fail("weight must be at least 1");
  if (in.r0 < 0.0) return fail("negative data radius");
  // Scale zero is allowed: the chart then degenerates to the constant map at
  // the equilibrium, which is still a valid (if useless) parameterization.
  if (!(in.scale_l2 >= 0.0)) return fail("scale must be nonnegative");
  if (int(in.a.size()) < in.K + 1 || int(in.b.size()) < in.K + 1)
    return fail("mode window exceeds the supplied data");
  if (!(in.lambda.real() > 0.0))
    return fail("eigenvalue must have positive real part");

  const int K = in.K, M = in.M;
  const int nk = K + 1, nb = M + 1;
  const Eigen::Index n = Eigen::Index(nk) * nb;
  const double nu = in.nu;

  // ---- the data must be an approximate eigenpair -------------------------
  // Residuals of mu_k a + (a*a) and i(mu_k b + 2(a*b)) - lambda b on the
  // window, relative to the data size; garbage input fails here instead of
  // producing a chart for a nonexistent object.
  {
    detail::CVec av(nk), bv(nk);
    for (int k = 0; k < nk; ++k) {
      av[k] = in.a[size_t(k)];
      bv[k] = in.b[size_t(k)];
    }
    const detail::CVec aa = detail::conv_point(av, av, K);
    const detail::CVec ab = detail::conv_point(av, bv, K);
    double res_a = 0.0, res_b = 0.0, size_a = 1.0, size_b = 1.0;
    for (int k = 0; k < nk; ++k) {
      const double mu = detail::mu_point(k);
      res_a = std::max(res_a, std::abs(mu * av[k] + aa[k]));
      res_b = std::max(res_b, std::abs(cplx(0, 1) * (mu * bv[k] + 2.0 * ab[k]) -
                                       in.lambda * bv[k]));
      size_a = std::max(size_a, std::abs(mu) + std::abs(aa[k]));
      size_b = std::max(size_b, (std::abs(mu) + std::abs(in.lambda)) *
                                    std::abs(bv[k]));
    }
    if (res_a > 1e-6 * size_a)
      return fail("profile data do not solve the equilibrium equation");
    if (res_b > 1e-6 * size_b)
      return fail("eigenvector data do not solve the eigenvalue equation");
  }

  // ---- eigenvalue box and symbol floor ------------------------------------
  const CInterval lam{Interval(next_down(in.lambda.real() - in.r0),
                               next_up(in.lambda.real() + in.r0)),
                      Interval(next_down(in.lambda.imag() - in.r0),
                               next_up(in.lambda.imag() + in.r0))};
  out.lambda_r0 = in.r0;
  if (!(lam.re.lo > 0.0))
    return fail("eigenvalue box touches the imaginary axis");

  const Interval om2 = Interval(4.0) * sqr(pi_interval());

  // Symbol mu_{k,m} = lambda m + i k^2 w^2 over the eigenvalue box.
  auto mu_box = [&](int k, int m) {
    const double dm = double(m);
    return CInterval{dm * lam.re,
                     dm * lam.im + Interval(double(k) * double(k)) * om2};
  };

  // Beyond the mode window the symbol must stay away from zero:
  // Im(lambda) m + (K+1)^2 w^2 > 0 for every m <= M yields a positive floor
  // mu_star <= |mu_{k,m}| for all k > K, m <= M.
  {
    double floor_sq = 0.0;
    bool first = true;
    for (int m = 0; m <= M; ++m) {
      const Interval g =
          double(m) * lam.im + Interval(double(K + 1) * double(K + 1)) * om2;
      if (!(g.lo > 0.0))
        return fail("eigenvalue lies in the resonant cone of the mode window");
      const Interval v = sqr(double(m) * lam.re) + sqr(g);
      if (first || v.lo < floor_sq) floor_sq = v.lo;
      first = false;
    }
    out.mu_star = sqrt(Interval(floor_sq)).lo;
  }
  if (!(out.mu_star > 0.0)) return fail("degenerate symbol floor");

  // ---- data: truncated profile, scaled and rotated eigenvector -----------
  std::vector<cplx> abar(size_t(nk), cplx{}), btil(size_t(nk), cplx{});
  for (int k = 0; k < nk; ++k) abar[size_t(k)] = in.a[size_t(k)];

  Interval dropped_a(0.0), dropped_b(0.0);
  for (int k = nk; k < int(in.a.size()); ++k)
    dropped_a += weight(k, nu) * Interval(ci_of(in.a[size_t(k)]).mag());
  for (int k = nk; k < int(in.b.size()); ++k)
    dropped_b += weight(k, nu) * Interval(ci_of(in.b[size_t(k)]).mag());

  double l2 = 0.0;
  for (int k = 0; k < nk; ++k) l2 += std::norm(in.b[size_t(k)]);
  l2 = std::sqrt(l2);
  if (!(l2 > 0.0)) return fail("eigenvector data vanish on the window");
  const double s = in.scale_l2 / l2;
  const cplx c = s * std::polar(1.0, in.theta);
  out.scale = s;

  // First-order data are the stored doubles; the exact multiple c*b differs
  // by rounding, accounted for alongside the data radius of each row.
  Interval round_b(0.0);
  for (int k = 0; k < nk; ++k) {
    btil[size_t(k)] = c * in.b[size_t(k)];
    const CInterval d =
        ci_of(c) * ci_of(in.b[size_t(k)]) - ci_of(btil[size_t(k)]);
    round_b += weight(k, nu) * Interval(d.mag());
  }
  const Interval r0_row_a = Interval(in.r0) + dropped_a;
  const Interval r0_row_b =
      Interval(ci_of(c).mag()) * (Interval(in.r0) + dropped_b) + round_b;

  // ---- order-by-order recurrence (floating point) -------------------------
  out.p.assign(size_t(nb), std::vector<cplx>(size_t(nk)));
  out.p[0] = abar;
  out.p[1] = btil;

  detail::CVec a_pt(nk);
  for (int k = 0; k < nk; ++k) a_pt[k] = abar[size_t(k)];
  const detail::CMat Ta = detail::conv_op_point(a_pt, K);
  const double om2_d = 4.0 * std::numbers::pi * std::numbers::pi;

  std::vector<Eigen::PartialPivLU<MatrixXcd>> lus;
  lus.resize(size_t(nb));
  std::vector<detail::CVec> p_pt(size_t(nb), detail::CVec::Zero(nk).eval());
  p_pt[0] = a_pt;
  for (int k = 0; k < nk; ++k) p_pt[1][k] = btil[size_t(k)];

  for (int m = 2; m <= M; ++m) {
    MatrixXcd Dm = cplx(0, -2) * Ta;
    for (int k = 0; k < nk; ++k)
      Dm(k, k) += in.lambda * double(m) + cplx(0, 1) * ((om2_d * k) * k);
    lus[size_t(m)] = Eigen::PartialPivLU<MatrixXcd>(Dm);
    detail::CVec rhs = detail::CVec::Zero(nk);
    for (int l = 1; l <= m - 1; ++l)
      rhs += detail::conv_point(p_pt[size_t(l)], p_pt[size_t(m - l)], K);
    p_pt[size_t(m)] = lus[size_t(m)].solve(cplx(0, 1) * rhs);
    for (int k = 0; k < nk; ++k)
      out.p[size_t(m)][size_t(k)] = p_pt[size_t(m)][k];
  }

  // ---- derivative enclosure on the window ---------------------------------
  // Block row m >= 2, block column l <= m holds
  //     delta_{ml} diag(mu_{k,m}) - 2i Conv(p_{m-l});
  // rows 0 and 1 are the identity (they pin the data).  Midpoints double as
  // the matrix inverted below; radii carry the eigenvalue box and the
  // rounding of the assembled entries.
  CIMatrix Dfc(n, n);
  Dfc.mid.block(0, 0, 2 * nk, 2 * nk) = MatrixXcd::Identity(2 * nk, 2 * nk);
  for (int m = 2; m <= M; ++m) {
    for (int l = 0; l <= m; ++l) {
      const std::vector<cplx>& q = out.p[size_t(m - l)];
      for (int k = 0; k < nk; ++k) {
        const Eigen::Index gi = Eigen::Index(m) * nk + k;
        for (int j = 0; j < nk; ++j) {
          CInterval t = ci_of(q[size_t(std::abs(k - j))]);
          if (j > 0 && k + j <= K) t += ci_of(q[size_t(k + j)]);
          t = detail::times_minus_2i(t);
          if (l == m && j == k) t += mu_box(k, m);
          cplx mid;
          double rad;
          detail::to_disk(t, mid, rad);
          Dfc.mid(gi, Eigen::Index(l) * nk + j) = mid;
          Dfc.rad(gi, Eigen::Index(l) * nk + j) = rad;
        }
      }
    }
  }

  // ---- numerically inverted window ----------------------------------------
  // The derivative midpoint is block lower triangular with invertible
  // diagonal blocks: invert by block forward substitution.
  CIMatrix Ac(n, n);
  {
    MatrixXcd& A = Ac.mid;
    A.block(0, 0, 2 * nk, 2 * nk) = MatrixXcd::Identity(2 * nk, 2 * nk);
    const MatrixXcd eye = MatrixXcd::Identity(nk, nk);
    for (int m = 2; m <= M; ++m)
      A.block(Eigen::Index(m) * nk, Eigen::Index(m) * nk, nk, nk) =
          lus[size_t(m)].solve(eye);
    for (int l = 0; l <= M - 1; ++l) {
      for (int m = std::max(l + 1, 2); m <= M; ++m) {
        const Eigen::Index w = Eigen::Index(m - l) * nk;
        const MatrixXcd S =
            Dfc.mid.block(Eigen::Index(m) * nk, Eigen::Index(l) * nk, nk, w) *
            A.block(Eigen::Index(l) * nk, Eigen::Index(l) * nk, w, nk);
        A.block(Eigen::Index(m) * nk, Eigen::Index(l) * nk, nk, nk) =
            -lus[size_t(m)].solve(S);
      }
    }
    if (!A.allFinite()) return fail("window inverse is not finite");
  }

  // ---- Z0: window defect of the approximate inverse -----------------------
  // All action beyond the window cancels exactly (identity against identity
  // on the data rows, 1/mu against mu elsewhere), leaving I - A Df on the
  // window.  Both factors are block lower triangular, so only blocks on or
  // below the diagonal are nonzero.
  double Z0 = 0.0;
  {
    const CIMatrix prod = ci_gemm(Ac, Dfc);
    detail::Grid g(size_t(nk), std::vector<CInterval>(size_t(nk), CInterval{Interval(0.0), Interval(0.0)}));
    for (int mcol = 0; mcol <= M; ++mcol) {
      Interval colsum(0.0);
      for (int j = mcol; j <= M; ++j) {
        for (int k = 0; k < nk; ++k)
          for (int i = 0; i < nk; ++i) {
            const Eigen::Index gi = Eigen::Index(j) * nk + k;
            const Eigen::Index gj = Eigen::Index(mcol) * nk + i;
            CInterval e = prod.entry(gi, gj);
            if (gi == gj)
              e = CInterval{Interval(1.0), Interval(0.0)} - e;
            else
              e = -e;
            g[size_t(k)][size_t(i)] = e;
          }
        colsum += Interval(op_norm_block(g, 0.0, nu));
      }
      Z0 = std::max(Z0, colsum.hi);
    }
  }
  Dfc = CIMatrix();  // release: only the inverse is needed from here on

  // ---- block norms of the approximate inverse -----------------------------
  // Diagonal blocks continue beyond the mode window: identity on the two
  // data rows, 1/mu_{k,m} elsewhere with magnitude decreasing in k, so the
  // entry at K+1 bounds the tail.  Off-diagonal blocks act on the window
  // only.
  std::vector<Interval> col_norm(size_t(nb), Interval(0.0));
  {
    detail::Grid g(size_t(nk), std::vector<CInterval>(size_t(nk), CInterval{Interval(0.0), Interval(0.0)}));
    for (int mcol = 0; mcol <= M; ++mcol) {
      for (int j = mcol; j <= M; ++j) {
        double tail = 0.0;
        if (j == mcol)
          tail = mcol <= 1
                     ? 1.0
                     : (Interval(1.0) / Interval(mu_box(K + 1, mcol).mig())).hi;
        for (int k = 0; k < nk; ++k)
          for (int i = 0; i < nk; ++i)
            g[size_t(k)][size_t(i)] = ci_of(
                Ac.mid(Eigen::Index(j) * nk + k, Eigen::Index(mcol) * nk + i));
        col_norm[size_t(mcol)] += Interval(op_norm_block(g, tail, nu));
      }
    }
  }
  double alpha = 0.0;
  for (int m = 0; m <= M; ++m) alpha = std::max(alpha, col_norm[size_t(m)].hi);
  alpha = std::max(alpha,
                   (Interval(1.0) / (Interval(lam.re.lo) * double(M + 1))).hi);
  out.alpha_op = alpha;
  const double Z2 = 2.0 * alpha;

  // ---- interval convolution powers of the series --------------------------
  // (p*p)_m for m = 2..2M on modes 0..2K, feeding the residual and its
  // beyond-window pieces.
  std::vector<CosineSeq> ps;
  ps.resize(size_t(nb));
  for (int m = 0; m <= M; ++m) {
    ps[size_t(m)].nu = nu;
    ps[size_t(m)].coef.resize(size_t(nk));
    for (int k = 0; k < nk; ++k)
      ps[size_t(m)].coef[size_t(k)] = ci_of(out.p[size_t(m)][size_t(k)]);
  }
  const CInterval zero_ci{Interval(0.0), Interval(0.0)};
  std::vector<std::vector<CInterval>> cq(
      size_t(2 * M + 1), std::vector<CInterval>(size_t(2 * K + 1), zero_ci));
  for (int m = 2; m <= 2 * M; ++m) {
    const int lmin = std::max(0, m - M);
    for (int l = lmin; 2 * l <= m; ++l) {
      const CosineSeq c2 = conv(ps[size_t(l)], ps[size_t(m - l)]);
      const bool diag_pair = (2 * l == m);
      for (int k = 0; k <= 2 * K; ++k) {
        CInterval v = c2.coef[size_t(k)];
        if (!diag_pair) v = v + v;
        cq[size_t(m)][size_t(k)] += v;
      }
    }
  }

  // ---- Y0: residual of the computed series --------------------------------
  Interval Y0(0.0);
  {
    // window residual through the inverse (the data rows vanish exactly:
    // p_0 and p_1 are stored as the data themselves)
    CIMatrix fvec(n, 1);
    for (int m = 2; m <= M; ++m)
      for (int k = 0; k < nk; ++k) {
        const CInterval t = mu_box(k, m) * ci_of(out.p[size_t(m)][size_t(k)]) -
                            mul_i(cq[size_t(m)][size_t(k)]);
        cplx mid;
        double rad;
        detail::to_disk(t, mid, rad);
        fvec.mid(Eigen::Index(m) * nk + k, 0) = mid;
        fvec.rad(Eigen::Index(m) * nk + k, 0) = rad;
      }
    const CIMatrix w = ci_gemv(Ac, fvec);
    for (int m = 0; m <= M; ++m)
      for (int k = 0; k < nk; ++k)
        Y0 +=
            weight(k, nu) * Interval(w.entry_mag(Eigen::Index(m) * nk + k, 0));

    // modes beyond the window, orders within it
    for (int m = 2; m <= M; ++m)
      for (int k = K + 1; k <= 2 * K; ++k)
        Y0 += weight(k, nu) * Interval(cq[size_t(m)][size_t(k)].mag()) /
              Interval(mu_box(k, m).mig());

    // orders beyond the window
    for (int m = M + 1; m <= 2 * M; ++m)
      for (int k = 0; k <= 2 * K; ++k)
        Y0 += weight(k, nu) * Interval(cq[size_t(m)][size_t(k)].mag()) /
              Interval(mu_box(k, m).mig());

    // data rows: equilibrium-stage radius through the inverse columns
    Y0 += col_norm[0] * r0_row_a + col_norm[1] * r0_row_b;
  }

  Interval normX(0.0);
  for (int m = 0; m <= M; ++m)
    for (int k = 0; k < nk; ++k)
      normX +=
          weight(k, nu) * Interval(ci_of(out.p[size_t(m)][size_t(k)]).mag());
  out.norm_X = normX.hi;

  // ---- Z1: window-tail coupling --------------------------------------------
  Interval Z1(0.0);
  {
    // A unit perturbation beyond the mode window sits at a single order j
    // and a single mode kappa > K, so the operator norm is the worst
    // weighted column over (j, kappa).  Window row m >= 2 sees that column
    // through Conv(p_{m-j}), bounded per target mode by the psi majorant
    // (itself a sup over kappa, so one column of bounds serves every
    // kappa), and the inverse then spreads it across the window: one
    // nonnegative product covers every order j at once.
    std::vector<std::vector<double>> psi(
        size_t(nb), std::vector<double>(size_t(nk), 0.0));
    for (int m = 0; m <= M; ++m)
      for (int k = 0; k < nk; ++k)
        psi[size_t(m)][size_t(k)] = psi_bound(ps[size_t(m)], k, K);
    MatrixXd vhat = MatrixXd::Zero(n, nb);
    for (int j = 0; j <= M; ++j)
      for (int m = std::max(j, 2); m <= M; ++m)
        for (int k = 0; k < nk; ++k)
          vhat(Eigen::Index(m) * nk + k, Eigen::Index(j)) =
              2.0 * psi[size_t(m - j)][size_t(k)];
    CIMatrix vc(n, nb);
    vc.mid = vhat.cast<cplx>();
    CIMatrix am(n, n);
    am.mid = detail::abs_up(Ac.mid).cast<cplx>();
    const CIMatrix wv = ci_gemm(am, vc);
    double win = 0.0;
    for (int j = 0; j <= M; ++j) {
      Interval colsum(0.0);
      for (int m = 2; m <= M; ++m)
        for (int k = 0; k < nk; ++k)
          colsum += weight(k, nu) * Interval(wv.entry_mag(
                                        Eigen::Index(m) * nk + k, Eigen::Index(j)));
      win = std::max(win, colsum.hi);
    }
    Z1 += Interval(win);
    // tail rows of the inverse: diagonal 1/mu with magnitude at least
    // mu_star within orders <= M; beyond, |mu| >= Re(lambda)(M+1)
    Z1 += (Interval(2.0) * normX) / Interval(out.mu_star);
    Z1 += (Interval(2.0) * normX) / (Interval(lam.re.lo) * double(M + 1));
  }

  // ---- radii polynomial -----------------------------------------------------
  out.bounds = RadiiBounds{Y0.hi, Z0, Z1.hi, Z2};
  const RadiiResult rr = solve_radii(out.bounds);
  if (!rr.success)
    return fail("radii polynomial has no verified root (Y0=" +
                detail::fmt_sci(Y0.hi) + ", Z0=" + detail::fmt_sci(Z0) +
                ", Z1=" + detail::fmt_sci(Z1.hi) +
                ", Z2=" + detail::fmt_sci(Z2) + ")");
  out.rp = rr.radius;
  out.success = true;
  out.message = "validated";
  return out;
}

inline ManifoldPoint evaluate_manifold(const ManifoldResult& r,
                                       std::complex<double> sigma) {
  using detail::ci_of;
  if (!r.success)
    throw std::invalid_argument("evaluation requires a validated manifold");
  if (std::hypot(sigma.real(), sigma.imag()) > 1.0)
    throw std::invalid_argument("parameter outside the closed unit disk");
  const int nk = r.K + 1;
  const CInterval sc = ci_of(sigma);
  ManifoldPoint pt;
  pt.coef.assign(size_t(nk), CInterval{Interval(0.0), Interval(0.0)});
  for (int k = 0; k < nk; ++k) {
    CInterval acc = ci_of(r.p[size_t(r.M)][size_t(k)]);
    for (int m = r.M - 1; m >= 0; --m)
      acc = acc * sc + ci_of(r.p[size_t(m)][size_t(k)]);
    pt.coef[size_t(k)] = acc;
  }
  pt.err = r.rp;
  return pt;
}

}  // namespace nlscap
