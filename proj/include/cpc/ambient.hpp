#pragma once

// Pseudo-Euclidean linear algebra on R^4_p and the six constant-curvature
// hyperquadrics realized inside it.  Flat spaces are represented as the slice
// x4 = 0 so that every space shares the same 4-coordinate representation.

#include <array>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "cpc/errors.hpp"
#include "cpc/hyperdual.hpp"

namespace cpc {

template <typename S>
using Vec4 = Eigen::Matrix<S, 4, 1>;
using Vec4d = Vec4<double>;

// Descriptor of a hyperquadric Q^3_{p,eps} in R^4_p.
//   eps = 0:  the slice x4 = 0 (E^3 for p=0, L^3 for p=1)
//   eps = +-1:  { <x,x> = eps }
struct SpaceForm {
  int p = 0;
  int eps = 0;

  SpaceForm() = default;
  SpaceForm(int p_, int eps_) : p(p_), eps(eps_) {
    if (!admissible(p, eps))
      throw InvalidScene("inadmissible space form (p=" + std::to_string(p) +
                         ", eps=" + std::to_string(eps) + ")");
  }

  static bool admissible(int p, int eps) {
    return (p == 0 && eps == 0) || (p == 1 && eps == 0) || (p == 0 && eps == 1) ||
           (p == 1 && eps == -1) || (p == 1 && eps == 1) || (p == 2 && eps == -1) ||
           (p == 2 && eps == 1);
  }

  bool flat() const { return eps == 0; }

  // number of timelike directions of the induced metric
  int signature_index() const { return eps == -1 ? p - 1 : p; }

  std::string name() const {
    if (p == 0 && eps == 0) return "e3";
    if (p == 1 && eps == 0) return "l3";
    if (p == 0 && eps == 1) return "s3";
    if (p == 1 && eps == -1) return "h3";
    if (p == 1 && eps == 1) return "ds3";
    if (p == 2 && eps == -1) return "ads3";
    return "ads3t";
  }

  static SpaceForm from_name(const std::string& n) {
    if (n == "e3") return {0, 0};
    if (n == "l3") return {1, 0};
    if (n == "s3") return {0, 1};
    if (n == "h3") return {1, -1};
    if (n == "ds3") return {1, 1};
    if (n == "ads3") return {2, -1};
    if (n == "ads3t") return {2, 1};
    throw InvalidScene("unknown space form name '" + n + "'");
  }

  friend bool operator==(const SpaceForm& a, const SpaceForm& b) {
    return a.p == b.p && a.eps == b.eps;
  }
};

struct NullCone {
  int p = 1;  // p in {1, 2}
};

inline double metric_sign(int i, int p) { return i < p ? -1.0 : 1.0; }

template <typename S>
S inner(const Vec4<S>& x, const Vec4<S>& y, int p) {
  S s = x[3] * y[3];
  for (int i = 2; i >= 0; --i) s += S(metric_sign(i, p)) * x[i] * y[i];
  return s;
}

template <typename S>
S norm2(const Vec4<S>& x, int p) { return inner(x, x, p); }

inline double euclidean_norm(const Vec4d& x) { return x.norm(); }

// <x,x> - eps for curved spaces, x4 for flat slices; zero iff x lies on Q.
template <typename S>
S quadric_residual(const Vec4<S>& x, const SpaceForm& Q) {
  if (Q.flat()) return x[3];
  return norm2(x, Q.p) - S(double(Q.eps));
}

inline SpaceForm polar_space(const SpaceForm& Q) {
  if (Q.flat()) throw FlatSpaceHasNoPolar(Q.name());
  // s3 is self-polar: R^4_0 admits no quadric with <x,x> = -1
  if (!SpaceForm::admissible(Q.p, -Q.eps)) return Q;
  return {Q.p, -Q.eps};
}

// Involution of R^4_2 exchanging Q^3_{2,1} and Q^3_{2,-1}; negates inner products.
template <typename S>
Vec4<S> anti_isometry(const Vec4<S>& x) {
  Vec4<S> y;
  y << x[2], x[3], x[0], x[1];
  return y;
}

namespace detail {
template <typename S>
S det3(const S& a0, const S& a1, const S& a2,
       const S& b0, const S& b1, const S& b2,
       const S& c0, const S& c1, const S& c2) {
  return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0);
}
}  // namespace detail

// Generalized cross product: the unique n with <n, y> = det[a; b; y; q] for all
// y, where rows are stacked in that order.  With q = e4 and p = 0 this reduces
// to the right-handed Euclidean cross product of a and b in the slice.
template <typename S>
Vec4<S> cross_oriented(const Vec4<S>& a, const Vec4<S>& b, const Vec4<S>& q, int p) {
  using detail::det3;
  Vec4<S> cof;
  // cofactor of y_i in det[a; b; y; q], y in row 2 (0-based)
  cof[0] = det3(a[1], a[2], a[3], b[1], b[2], b[3], q[1], q[2], q[3]);
  cof[1] = -det3(a[0], a[2], a[3], b[0], b[2], b[3], q[0], q[2], q[3]);
  cof[2] = det3(a[0], a[1], a[3], b[0], b[1], b[3], q[0], q[1], q[3]);
  cof[3] = -det3(a[0], a[1], a[2], b[0], b[1], b[2], q[0], q[1], q[2]);
  Vec4<S> n;
  for (int i = 0; i < 4; ++i) n[i] = S(metric_sign(i, p)) * cof[i];
  return n;
}

template <typename S>
Vec4<S> ambient_axis(const SpaceForm& Q, const Vec4<S>& x) {
  if (Q.flat()) {
    Vec4<S> e4;
    e4 << S(0), S(0), S(0), S(1);
    return e4;
  }
  return x;
}

// A tangent plane span{a,b} is degenerate when its induced Gram determinant is
// below 1e-12 relative to the Euclidean scale of the inputs.
inline bool tangent_plane_degenerate(const Vec4d& a, const Vec4d& b, int p) {
  double gaa = inner(a, a, p), gab = inner(a, b, p), gbb = inner(b, b, p);
  double det = gaa * gbb - gab * gab;
  double scale = a.squaredNorm() * b.squaredNorm();
  return std::abs(det) < 1e-12 * std::max(scale, 1e-300);
}

inline bool linearly_dependent(const Vec4d& a, const Vec4d& b) {
  double det = a.squaredNorm() * b.squaredNorm() - std::pow(a.dot(b), 2);
  double scale = a.squaredNorm() * b.squaredNorm();
  return det < 1e-20 * std::max(scale, 1e-300);
}

// Direction of T_x Q orthogonal to both tangents a and b (and to x itself in
// the curved case).  Not normalized; orientation is a fixed function of the
// (x, a, b) ordering.
inline Vec4d metric_orthocomplement(const Vec4d& x, const Vec4d& a, const Vec4d& b,
                                    const SpaceForm& Q) {
  if (linearly_dependent(a, b))
    throw DegenerateTangentPlane("tangent vectors linearly dependent");
  if (tangent_plane_degenerate(a, b, Q.p))
    throw DegenerateTangentPlane("induced metric on tangent plane is degenerate");
  Vec4d n = cross_oriented(a, b, ambient_axis(Q, x), Q.p);
  return n;
}

template <typename S>
bool all_finite(const Vec4<S>& x) {
  for (int i = 0; i < 4; ++i)
    if (!std::isfinite(value_of(x[i]))) return false;
  return true;
}

}  // namespace cpc
