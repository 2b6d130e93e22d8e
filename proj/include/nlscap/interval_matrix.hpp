#pragma once
// Midpoint-radius complex interval matrices.  Entry (i,j) represents the
// closed disk { z : |z - mid(i,j)| <= rad(i,j) }.  Products run as ordinary
// floating-point GEMMs (Eigen) and the radii absorb both the input radii and
// a standard a-priori bound on the accumulated rounding error, so results
// are rigorous enclosures at near-BLAS speed.

#include <Eigen/Dense>
#include <nlscap/interval.hpp>

#include <limits>

namespace nlscap {

struct CIMatrix {
  Eigen::MatrixXcd mid;
  Eigen::MatrixXd rad;

  CIMatrix() = default;
  CIMatrix(Eigen::Index r, Eigen::Index c)
      : mid(Eigen::MatrixXcd::Zero(r, c)), rad(Eigen::MatrixXd::Zero(r, c)) {}

  static CIMatrix from_point(const Eigen::MatrixXcd& m) {
    CIMatrix out;
    out.mid = m;
    out.rad = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    return out;
  }

  Eigen::Index rows() const { return mid.rows(); }
  Eigen::Index cols() const { return mid.cols(); }

  // Enclosing rectangle of the disk at (i,j).
  CInterval entry(Eigen::Index i, Eigen::Index j) const {
    double r = rad(i, j);
    return CInterval{
        Interval(next_down(mid(i, j).real() - r), next_up(mid(i, j).real() + r)),
        Interval(next_down(mid(i, j).imag() - r), next_up(mid(i, j).imag() + r))};
  }

  // Upper bound of |entry| over the disk.
  double entry_mag(Eigen::Index i, Eigen::Index j) const {
    return next_up(next_up(std::abs(mid(i, j))) + rad(i, j));
  }
};

namespace detail {

// Bound on the relative rounding error of a length-n complex inner product
// evaluated in double precision, with generous headroom for the complex
// multiply and for any summation order.
inline double gemm_error_factor(Eigen::Index n) {
  double u = 0.5 * std::numeric_limits<double>::epsilon();
  double g = (2.0 * double(n) + 8.0) * u;
  return 1.5 * g / (1.0 - g);
}

// Entrywise |m| with a one-ulp outward nudge (std::abs on complex is
// faithfully rounded, not exact).
inline Eigen::MatrixXd abs_up(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      out(i, j) = next_up(std::abs(m(i, j)));
  return out;
}

// Inflate every entry so the floating-point evaluation of the radius
// expression itself cannot undershoot the exact value.
inline Eigen::MatrixXd inflate_radius(const Eigen::MatrixXd& r) {
  return (r.array() * (1.0 + 1e-12) + 1e-290).matrix();
}

}  // namespace detail

// Enclosure of A*B.
inline CIMatrix ci_gemm(const CIMatrix& A, const CIMatrix& B) {
  CIMatrix C;
  C.mid.noalias() = A.mid * B.mid;
  Eigen::MatrixXd am = detail::abs_up(A.mid);
  Eigen::MatrixXd bm = detail::abs_up(B.mid);
  Eigen::MatrixXd err =
      detail::gemm_error_factor(A.cols()) * (am * bm) +
      A.rad * (bm + B.rad) + am * B.rad;
  C.rad = detail::inflate_radius(err);
  return C;
}

inline CIMatrix ci_add(const CIMatrix& A, const CIMatrix& B) {
  CIMatrix C;
  C.mid = A.mid + B.mid;
  Eigen::MatrixXd slop =
      (std::numeric_limits<double>::epsilon() * detail::abs_up(C.mid));
  C.rad = detail::inflate_radius(A.rad + B.rad + slop);
  return C;
}

inline CIMatrix ci_sub(const CIMatrix& A, const CIMatrix& B) {
  CIMatrix C;
  C.mid = A.mid - B.mid;
  Eigen::MatrixXd slop =
      (std::numeric_limits<double>::epsilon() * detail::abs_up(C.mid));
  C.rad = detail::inflate_radius(A.rad + B.rad + slop);
  return C;
}

// Enclosure of A*v for an interval vector held as a one-column CIMatrix.
inline CIMatrix ci_gemv(const CIMatrix& A, const CIMatrix& v) {
  return ci_gemm(A, v);
}

}  // namespace nlscap
