#pragma once
// Cosine-symmetric sequences with geometrically weighted l1 norm
// |a| = |a_0| + 2 sum_{k>=1} |a_k| nu^k, the Banach-algebra home of the
// Fourier coefficients used throughout.  A sequence is stored as a finite
// window of complex interval coefficients plus a scalar bound on the
// weighted mass beyond the window.

#include <nlscap/interval.hpp>

#include <stdexcept>
#include <vector>

namespace nlscap {

// omega_0 = 1, omega_k = 2 nu^k.
inline Interval weight(int k, double nu) {
  if (k == 0) return Interval(1.0);
  return 2.0 * pow_int(Interval(nu), k);
}

struct CosineSeq {
  std::vector<CInterval> coef;
  double tail = 0.0;  // upper bound on the weighted mass beyond the window
  double nu = 1.0;

  int degree() const { return int(coef.size()) - 1; }
  CInterval at(int k) const {
    int a = k < 0 ? -k : k;
    if (a >= int(coef.size())) return CInterval{Interval(0.0), Interval(0.0)};
    return coef[size_t(a)];
  }
};

// Upper bound for the weighted l1 norm (window plus tail).
inline double norm_upper(const CosineSeq& a) {
  Interval s(0.0);
  for (int k = 0; k < int(a.coef.size()); ++k)
    s += Interval(a.coef[size_t(k)].mag()) * weight(k, a.nu);
  return next_up((s + Interval(a.tail)).hi);
}

// Upper bound for the norm of a window as a functional on the space:
// max(|a_0|, sup_{k>=1} |a_k| / (2 nu^k)).
inline double dual_norm_upper(const CosineSeq& a) {
  if (a.tail != 0.0)
    throw std::invalid_argument("dual norm needs a finite window");
  double best = a.coef.empty() ? 0.0 : a.coef[0].mag();
  for (int k = 1; k < int(a.coef.size()); ++k) {
    double v = (Interval(a.coef[size_t(k)].mag()) / weight(k, a.nu)).hi;
    best = std::max(best, v);
  }
  return best;
}

// Upper bound for sup_k |a_k| nu^{-k} (no halving on the positive modes).
inline double sup_norm_upper(const CosineSeq& a) {
  if (a.tail != 0.0)
    throw std::invalid_argument("sup norm needs a finite window");
  double best = 0.0;
  for (int k = 0; k < int(a.coef.size()); ++k) {
    double v = (Interval(a.coef[size_t(k)].mag()) / pow_int(Interval(a.nu), k)).hi;
    best = std::max(best, v);
  }
  return best;
}

// Symmetric (cosine) convolution of finite windows, exact support.
// Each stored ordered pair (k1,k2) accounts for the lattice pairs
// (+-k1,+-k2): same signs land on k1+k2; opposite signs land on |k1-k2|
// when the respective index is nonzero (the diagonal k1=k2>0 hits 0 twice).
inline CosineSeq conv(const CosineSeq& a, const CosineSeq& b) {
  if (a.nu != b.nu) throw std::invalid_argument("mixed weights in conv");
  if (a.tail != 0.0 || b.tail != 0.0)
    throw std::invalid_argument("conv needs finite windows");
  int Ka = a.degree(), Kb = b.degree();
  CosineSeq out;
  out.nu = a.nu;
  out.coef.assign(size_t(Ka + Kb + 1), CInterval{Interval(0.0), Interval(0.0)});
  for (int k1 = 0; k1 <= Ka; ++k1) {
    for (int k2 = 0; k2 <= Kb; ++k2) {
      CInterval pr = a.coef[size_t(k1)] * b.coef[size_t(k2)];
      out.coef[size_t(k1 + k2)] += pr;
      if (k2 > 0 && k1 >= k2) out.coef[size_t(k1 - k2)] += pr;
      if (k1 > 0 && k2 >= k1) out.coef[size_t(k2 - k1)] += pr;
    }
  }
  return out;
}

// Action of convolution with `a` on the window 0..K:
// T[k][j] = a_{|k-j|} + (j>0) a_{k+j}.
inline std::vector<std::vector<CInterval>> conv_matrix(const CosineSeq& a, int K) {
  std::vector<std::vector<CInterval>> T(
      size_t(K + 1), std::vector<CInterval>(size_t(K + 1)));
  for (int k = 0; k <= K; ++k)
    for (int j = 0; j <= K; ++j) {
      CInterval v = a.at(k - j);
      if (j > 0) v += a.at(k + j);
      T[size_t(k)][size_t(j)] = v;
    }
  return T;
}

// Majorant for the window-to-tail coupling of convolution with `a`:
// psi_k(a) = max_{l=K+1..k+K} |a_{|k-l|}| / (2 nu^l), for a window 0..K.
inline double psi_bound(const CosineSeq& a, int k, int K) {
  double best = 0.0;
  for (int l = K + 1; l <= k + K; ++l) {
    Interval w = 2.0 * pow_int(Interval(a.nu), l);
    double v = (Interval(a.at(k - l).mag()) / w).hi;
    best = std::max(best, v);
  }
  return best;
}

// Operator norm on the weighted l1 space of a finite block together with a
// scalar bound for the action beyond the block:
// max( max_j (1/omega_j) sum_i |G_ij| omega_i , tail_entry ).
inline double op_norm_block(const std::vector<std::vector<CInterval>>& G,
                            double tail_entry, double nu) {
  double best = tail_entry;
  if (G.empty()) return best;
  int rows = int(G.size());
  int cols = int(G[0].size());
  for (int j = 0; j < cols; ++j) {
    Interval colsum(0.0);
    for (int i = 0; i < rows; ++i)
      colsum += Interval(G[size_t(i)][size_t(j)].mag()) * weight(i, nu);
    best = std::max(best, (colsum / weight(j, nu)).hi);
  }
  return best;
}

}  // namespace nlscap
