#pragma once

// Named closed-form generating curves, parabolic triples and profile
// functions.  These are the generator families selectable from scene files;
// every one evaluates natively in hyper-dual arithmetic, so the jets of the
// surfaces built on them are exact to roundoff.

#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "cpc/curves.hpp"

namespace cpc {

// ---------------------------------------------------------------------------
// scalar profile functions u -> h(u)

class ProfileKernel {
 public:
  virtual ~ProfileKernel() = default;
  virtual double eval(double u) const = 0;
  virtual HD1 eval(const HD1& u) const = 0;
  virtual HD2 eval(const HD2& u) const = 0;
  virtual HD3 eval(const HD3& u) const = 0;
};

using Profile = std::shared_ptr<const ProfileKernel>;

template <typename F>
class ProfileOf final : public ProfileKernel {
 public:
  explicit ProfileOf(F f) : f_(std::move(f)) {}
  double eval(double u) const override { return f_(u); }
  HD1 eval(const HD1& u) const override { return f_(u); }
  HD2 eval(const HD2& u) const override { return f_(u); }
  HD3 eval(const HD3& u) const override { return f_(u); }

 private:
  F f_;
};

template <typename F>
Profile make_profile(F f) {
  return std::make_shared<ProfileOf<F>>(std::move(f));
}

inline Profile profile_const(double c) {
  return make_profile([c](auto u) { return decltype(u)(c) + decltype(u)(0.0) * u; });
}

inline Profile profile_poly(std::vector<double> coeffs) {
  return make_profile([coeffs](auto u) {
    using S = decltype(u);
    S acc(0.0);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * u + S(coeffs[i]);
    return acc;
  });
}

// C^2 ramp: scale * max(u, 0)^3
inline Profile profile_cubic_ramp(double scale) {
  return make_profile([scale](auto u) {
    using S = decltype(u);
    if (value_of(u) <= 0.0) return S(0.0);
    return S(scale) * u * u * u;
  });
}

// smooth compactly supported bump: amp * exp(-1/(1-u^2)) on |u| < 1
inline Profile profile_bump(double amp) {
  return make_profile([amp](auto u) {
    using S = decltype(u);
    if (std::abs(value_of(u)) >= 1.0) return S(0.0);
    return S(amp) * exp(S(-1.0) / (S(1.0) - u * u));
  });
}

// ---------------------------------------------------------------------------
// closed-form framed curves

namespace families {

template <typename S>
Vec4<S> vec(double a, double b, double c, double d) {
  Vec4<S> v;
  v << S(a), S(b), S(c), S(d);
  return v;
}

// E^3 / L^3 circle of radius R in the x2-x3 plane with radial e1 and axis e2.
inline FramedCurve circle(const SpaceForm& space, double R) {
  if (!space.flat()) throw InvalidScene("circle: flat space expected");
  FramedCurve fc;
  fc.space = space;
  fc.frame_signature = {1, space.p == 1 ? -1 : 1};
  fc.domain = {0.0, 2.0 * M_PI};
  fc.kernel = make_jet_kernel<3>([R](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    S c = cos(u), s = sin(u);
    out[0] << S(0.0), S(R) * c, S(R) * s, S(0.0);
    out[1] << S(0.0), c, s, S(0.0);
    out[2] = vec<S>(1, 0, 0, 0);
  });
  return fc;
}

// L^3 circle with timelike e1 = (1,0,0,0) and radial spacelike e2.
inline FramedCurve circle_timelike_e1(double R) {
  FramedCurve fc;
  fc.space = {1, 0};
  fc.frame_signature = {-1, 1};
  fc.domain = {0.0, 2.0 * M_PI};
  fc.kernel = make_jet_kernel<3>([R](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    S c = cos(u), s = sin(u);
    out[0] << S(0.0), S(R) * c, S(R) * s, S(0.0);
    out[1] = vec<S>(1, 0, 0, 0);
    out[2] << S(0.0), c, s, S(0.0);
  });
  return fc;
}

// straight line along a coordinate axis of a flat slice; the frame spans the
// two remaining axes in ascending order.
inline FramedCurve line(const SpaceForm& space, int axis) {
  if (!space.flat()) throw InvalidScene("line: flat space expected");
  if (axis < 1 || axis > 3) throw InvalidScene("line: axis must be 1, 2 or 3");
  int f1 = axis == 1 ? 2 : 1;
  int f2 = axis == 3 ? 2 : 3;
  FramedCurve fc;
  fc.space = space;
  fc.frame_signature = {int(metric_sign(f1 - 1, space.p)), int(metric_sign(f2 - 1, space.p))};
  fc.domain = {-2.0, 2.0};
  fc.kernel = make_jet_kernel<3>([axis, f1, f2](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    for (int k = 0; k < 3; ++k) out[k] = vec<S>(0, 0, 0, 0);
    out[0][axis - 1] = u;
    out[1][f1 - 1] = S(1.0);
    out[2][f2 - 1] = S(1.0);
  });
  return fc;
}

inline FramedCurve great_circle_s3() {
  FramedCurve fc;
  fc.space = {0, 1};
  fc.frame_signature = {1, 1};
  fc.domain = {0.0, 2.0 * M_PI};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << cos(u), sin(u), S(0.0), S(0.0);
    out[1] = vec<S>(0, 0, 1, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return fc;
}

inline FramedCurve h3_geodesic() {
  FramedCurve fc;
  fc.space = {1, -1};
  fc.frame_signature = {1, 1};
  fc.domain = {-1.5, 1.5};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << cosh(u), sinh(u), S(0.0), S(0.0);
    out[1] = vec<S>(0, 0, 1, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return fc;
}

// spacelike geodesic of dS^3 with timelike e1 (rows where -|e1|^2 = eps'' = 1)
inline FramedCurve ds3_geodesic_spacelike() {
  FramedCurve fc;
  fc.space = {1, 1};
  fc.frame_signature = {-1, 1};
  fc.domain = {0.0, 2.0 * M_PI};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << S(0.0), cos(u), sin(u), S(0.0);
    out[1] = vec<S>(1, 0, 0, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return fc;
}

// same geodesic, frame order swapped: spacelike e1, timelike e2 (eps'' = -1)
inline FramedCurve ds3_geodesic_spacelike_sw() {
  FramedCurve fc;
  fc.space = {1, 1};
  fc.frame_signature = {1, -1};
  fc.domain = {0.0, 2.0 * M_PI};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << S(0.0), cos(u), sin(u), S(0.0);
    out[1] = vec<S>(0, 0, 0, 1);
    out[2] = vec<S>(1, 0, 0, 0);
  });
  return fc;
}

inline FramedCurve ds3_geodesic_timelike() {
  FramedCurve fc;
  fc.space = {1, 1};
  fc.frame_signature = {1, 1};
  fc.domain = {-1.5, 1.5};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << sinh(u), cosh(u), S(0.0), S(0.0);
    out[1] = vec<S>(0, 0, 1, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return fc;
}

inline FramedCurve ads3_geodesic_spacelike() {
  FramedCurve fc;
  fc.space = {2, -1};
  fc.frame_signature = {-1, 1};
  fc.domain = {-1.5, 1.5};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << cosh(u), S(0.0), sinh(u), S(0.0);
    out[1] = vec<S>(0, 1, 0, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return fc;
}

inline FramedCurve ads3_geodesic_timelike() {
  FramedCurve fc;
  fc.space = {2, -1};
  fc.frame_signature = {1, 1};
  fc.domain = {0.0, 2.0 * M_PI};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << cos(u), sin(u), S(0.0), S(0.0);
    out[1] = vec<S>(0, 0, 1, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return fc;
}

// spacelike geodesic of Q^3_{2,1} with fully timelike normal frame
inline FramedCurve ads3t_geodesic() {
  FramedCurve fc;
  fc.space = {2, 1};
  fc.frame_signature = {-1, -1};
  fc.domain = {0.0, 2.0 * M_PI};
  fc.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << S(0.0), S(0.0), cos(u), sin(u);
    out[1] = vec<S>(1, 0, 0, 0);
    out[2] = vec<S>(0, 1, 0, 0);
  });
  return fc;
}

// ---------------------------------------------------------------------------
// integral curves gamma(u) = int_0^u h(s) e0(s) ds with the R x C frame
//   e0 = (0, -sin u, cos u, 0), e1 = (0, cos u, sin u, 0), e2 = (1, 0, 0, 0)

class IntegralFrameKernel final : public FrameKernel {
 public:
  IntegralFrameKernel(Profile h, int p) : h_(std::move(h)), p_(p) {}

  void eval(double u, Vec4<double>* out) const override { evalT(u, out); }
  void eval(const HD1& u, Vec4<HD1>* out) const override { evalT(u, out); }
  void eval(const HD2& u, Vec4<HD2>* out) const override { evalT(u, out); }
  void eval(const HD3& u, Vec4<HD3>* out) const override { evalT(u, out); }

 private:
  template <typename S>
  void evalT(const S& u, Vec4<S>* out) const {
    using std::cos;
    using std::sin;
    S c = cos(u), s = sin(u);
    out[1] << S(0.0), c, s, S(0.0);
    out[2] << S(1.0), S(0.0), S(0.0), S(0.0);

    double uq = value_of(u);
    std::array<Vec4d, 4> coeff;
    coeff[0] = quadrature(uq);
    // d/du (h e0) chains through the profile jets
    HD1 hu = h_->eval(HD1::variable_u(uq));
    double cu = std::cos(uq), su = std::sin(uq);
    Vec4d e0(0.0, -su, cu, 0.0), e0p(0.0, -cu, -su, 0.0), e0pp(0.0, su, -cu, 0.0);
    coeff[1] = hu.v * e0;
    coeff[2] = hu.du * e0 + hu.v * e0p;
    coeff[3] = hu.duu * e0 + 2.0 * hu.du * e0p + hu.v * e0pp;
    out[0] = detail::taylor_vec(coeff, u - S(uq));
  }

  Vec4d quadrature(double u) const {
    static const double gx[3] = {0.2386191860831969, 0.6612093864662645, 0.9324695142031521};
    static const double gw[3] = {0.4679139345726910, 0.3607615730481386, 0.1713244923791704};
    int panels = std::max(4, int(std::ceil(std::abs(u) / 0.25)));
    Vec4d acc = Vec4d::Zero();
    double a = 0.0, h = u / panels;
    for (int k = 0; k < panels; ++k) {
      double mid = a + (k + 0.5) * h, half = 0.5 * h;
      for (int g = 0; g < 3; ++g) {
        for (double sgn : {-1.0, 1.0}) {
          double t = mid + sgn * half * gx[g];
          double hv = h_->eval(t);
          acc += (gw[g] * half * hv) * Vec4d(0.0, -std::sin(t), std::cos(t), 0.0);
        }
      }
    }
    return acc;
  }

  Profile h_;
  int p_;
};

// generating data of the flat tube examples; p = 0 gives the E^3 family
// (frame signature (+1,+1)), p = 1 the L^3 family ((+1,-1), e2 timelike)
inline FramedCurve flat_tube_curve(int p, Profile h, Interval dom) {
  FramedCurve fc;
  fc.space = {p, 0};
  fc.frame_signature = {1, p == 1 ? -1 : 1};
  fc.domain = dom;
  fc.kernel = std::make_shared<IntegralFrameKernel>(std::move(h), p);
  return fc;
}

// ---------------------------------------------------------------------------
// parabolic triples

inline ParabolicData h3_parabolic_geodesic() {
  ParabolicData pd;
  pd.p = 1;
  pd.eps = -1;
  pd.eps_pp = 1;
  pd.domain = {-1.5, 1.5};
  pd.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << cosh(u), sinh(u), S(0.0), S(0.0);
    out[1] = vec<S>(0, 0, 1, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return pd;
}

inline ParabolicData ds3_parabolic_geodesic() {
  ParabolicData pd;
  pd.p = 1;
  pd.eps = 1;
  pd.eps_pp = 1;
  pd.domain = {0.0, 2.0 * M_PI};
  pd.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << S(0.0), cos(u), sin(u), S(0.0);
    out[1] = vec<S>(1, 0, 0, 0);
    out[2] = vec<S>(0, 0, 0, 1);
  });
  return pd;
}

inline ParabolicData ads3_parabolic_geodesic() {
  ParabolicData pd;
  pd.p = 2;
  pd.eps = -1;
  pd.eps_pp = -1;
  pd.domain = {-1.5, 1.5};
  pd.kernel = make_jet_kernel<3>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << cosh(u), S(0.0), sinh(u), S(0.0);
    out[1] = vec<S>(0, 0, 0, 1);
    out[2] = vec<S>(0, 1, 0, 0);
  });
  return pd;
}

// H^3 parabolic triple with prescribed curvature functions a(u) and b(u) of
// the unit-speed curve delta+; built from the moving-frame system
//   delta+' = e0,  e0' = delta+ + a e1 + b delta-,  e1' = -a e0,  delta-' = -b e0
inline ParabolicData h3_parabolic_ab(Profile a, Profile b, Interval dom, int steps = 2048) {
  MatrixFn Mfn = [a, b](const HD1& u) {
    HD1 av = a->eval(u), bv = b->eval(u);
    Matrix4hd M;
    M.setConstant(HD1(0.0));
    M(1, 0) = HD1(1.0);
    M(0, 1) = HD1(1.0);
    M(2, 1) = av;
    M(3, 1) = bv;
    M(1, 2) = -av;
    M(1, 3) = -bv;
    return M;
  };
  auto sol = std::make_shared<OdeFrameSolution>(Mfn, Eigen::Matrix4d::Identity(), dom, steps);
  ParabolicData pd;
  pd.p = 1;
  pd.eps = -1;
  pd.eps_pp = 1;
  pd.domain = dom;
  pd.kernel = std::make_shared<OdeColumnsKernel>(
      sol, std::array<std::pair<int, double>, 4>{{{0, 1.0}, {3, 1.0}, {2, 1.0}, {0, 0.0}}}, 3);
  return pd;
}

// Spacelike curve of dS^3 with frame driven by the profile htilde:
//   gamma' = htilde e0, e0' = -htilde gamma + e1 + e2, e1' = -e0, e2' = e0,
// columns (gamma, e0, e1, e2) with norms (+1, +1, +1, -1).  The returned
// frame is rewired to (e1, e2) = (col3, -col2), the orthonormal pair with
// -|e1|^2 = |e2|^2 = 1 that a hyperbolic tube in H^3 expects.
inline FramedCurve ds3_exponential_curve(Profile htilde, Interval dom, int steps = 2048) {
  MatrixFn Mfn = [htilde](const HD1& u) {
    HD1 h = htilde->eval(u);
    Matrix4hd M;
    M.setConstant(HD1(0.0));
    M(1, 0) = h;
    M(0, 1) = -h;
    M(2, 1) = HD1(1.0);
    M(3, 1) = HD1(1.0);
    M(1, 2) = HD1(-1.0);
    M(1, 3) = HD1(1.0);
    return M;
  };
  Eigen::Matrix4d F0;
  F0.col(0) = Vec4d(0, 1, 0, 0);
  F0.col(1) = Vec4d(0, 0, 1, 0);
  F0.col(2) = Vec4d(0, 0, 0, 1);
  F0.col(3) = Vec4d(1, 0, 0, 0);
  auto sol = std::make_shared<OdeFrameSolution>(Mfn, F0, dom, steps);
  FramedCurve fc;
  fc.space = {1, 1};
  fc.frame_signature = {-1, 1};
  fc.domain = dom;
  fc.kernel = std::make_shared<OdeColumnsKernel>(
      sol, std::array<std::pair<int, double>, 4>{{{0, 1.0}, {3, 1.0}, {2, -1.0}, {0, 0.0}}}, 3);
  for (int k = 0; k <= 256; ++k) {
    double u = dom.a + dom.length() * k / 256.0;
    if (std::abs(htilde->eval(u)) < 1e-10) fc.vertices.push_back(u);
  }
  return fc;
}

}  // namespace families

}  // namespace cpc
