#include <doctest.h>

#include <cmath>

#include "cpc/curves.hpp"
#include "cpc/families.hpp"

using namespace cpc;

namespace {

Curve line_e3() {
  Curve c;
  c.space = {0, 0};
  c.domain = {-2.0, 2.0};
  c.kernel = make_jet_kernel<1>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << u, S(0.5) * u, S(0.0), S(0.0);
  });
  return c;
}

Curve circle_e3(double R) {
  Curve c;
  c.space = {0, 0};
  c.domain = {0.0, 2.0};
  c.kernel = make_jet_kernel<1>([R](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << S(0.0), S(R) * cos(u), S(R) * sin(u), S(0.0);
  });
  return c;
}

Curve h3_geodesic_curve() {
  Curve c;
  c.space = {1, -1};
  c.domain = {-2.0, 2.0};
  c.kernel = make_jet_kernel<1>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << cosh(u), sinh(u), S(0.0), S(0.0);
  });
  return c;
}

double max_frame_residual(const FramedCurve& fc, int n = 33) {
  double m = 0;
  for (int k = 0; k < n; ++k) {
    double u = fc.domain.a + fc.domain.length() * k / (n - 1);
    m = std::max(m, frame_residuals(fc, u).max_abs());
  }
  return m;
}

}  // namespace

TEST_CASE("transport along a straight line is the identity") {
  Curve c = line_e3();
  Vec4d e1(0, 0, 1, 0), e2(0, 0, 0, 1);
  FramedCurve fc = transport_normal_frame(c, e1, e2, {1, 1}, 256);
  FrameJet j = fc.jet(1.7);
  CHECK((j.e1.point - e1).norm() < 1e-12);
  CHECK((j.e2.point - e2).norm() < 1e-12);
  CHECK(j.e1.d1.norm() < 1e-12);
}

TEST_CASE("the closed-form circle frame satisfies every frame invariant") {
  FramedCurve fc = families::circle(SpaceForm{0, 0}, 1.0);
  for (double u : {0.0, 0.7, 2.0, 5.5}) {
    ResidualRecord r = frame_residuals(fc, u);
    CHECK(r.max_abs() < 1e-14);
  }
}

TEST_CASE("transport along a circle reproduces the closed-form parallel frame") {
  Curve c = circle_e3(1.0);
  // radial + axis frame at u = 0
  Vec4d e1(0, 1, 0, 0), e2(1, 0, 0, 0);
  FramedCurve fc = transport_normal_frame(c, e1, e2, {1, 1}, 2000);  // step 1e-3
  double max_res = 0, max_err = 0;
  for (int k = 0; k <= 40; ++k) {
    double u = 2.0 * k / 40.0;
    max_res = std::max(max_res, frame_residuals(fc, u).max_abs());
    FrameJet j = fc.jet(u);
    Vec4d exact_e1(0, std::cos(u), std::sin(u), 0);
    max_err = std::max(max_err, (j.e1.point - exact_e1).norm());
  }
  CHECK(max_res < 1e-8);
  CHECK(max_err < 1e-8);
}

TEST_CASE("transport error decreases at fourth order") {
  Curve c = circle_e3(1.0);
  Vec4d e1(0, 1, 0, 0), e2(1, 0, 0, 0);
  auto err_at = [&](int steps) {
    FramedCurve fc = transport_normal_frame(c, e1, e2, {1, 1}, steps);
    double m = 0;
    for (int k = 0; k <= 10; ++k) {
      double u = 2.0 * k / 10.0;
      Vec4d exact_e1(0, std::cos(u), std::sin(u), 0);
      m = std::max(m, (fc.jet(u).e1.point - exact_e1).norm());
    }
    return m;
  };
  // at least fourth order (the circle shows mild superconvergence)
  double e40 = err_at(40), e80 = err_at(80);
  CHECK(e40 / e80 > 12.0);
  CHECK(e40 / e80 < 80.0);
}

TEST_CASE("transport along an h3 geodesic keeps the constant frame") {
  Curve c = h3_geodesic_curve();
  Vec4d e1(0, 0, 1, 0), e2(0, 0, 0, 1);
  FramedCurve fc = transport_normal_frame(c, e1, e2, {1, 1}, 2048);
  double m = 0;
  for (int k = 0; k <= 32; ++k) {
    double u = -2.0 + 4.0 * k / 32.0;
    FrameJet j = fc.jet(u);
    m = std::max(m, (j.e1.point - e1).norm() + (j.e2.point - e2).norm());
    m = std::max(m, frame_residuals(fc, u).max_abs());
  }
  CHECK(m < 1e-9);
}

TEST_CASE("a definite normal bundle refuses an indefinite frame request") {
  Curve c = circle_e3(1.0);
  CHECK_THROWS_AS(transport_normal_frame(c, Vec4d(0, 1, 0, 0), Vec4d(1, 0, 0, 0), {-1, 1}, 64),
                  FrameSignatureUnavailable);
}

TEST_CASE("transport across a vertex raises RegularityLoss") {
  Curve c;
  c.space = {0, 0};
  c.domain = {-1.0, 1.0};
  c.kernel = make_jet_kernel<1>([](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    out[0] << u * u * u, S(0.0), S(0.0), S(0.0);  // gamma' = 0 at u = 0
  });
  CHECK_THROWS_AS(transport_normal_frame(c, Vec4d(0, 1, 0, 0), Vec4d(0, 0, 1, 0), {1, 1}, 64),
                  RegularityLoss);
}

TEST_CASE("solve_frame_system: M = 0 keeps the frame constant") {
  MatrixFn Mfn = [](const HD1&) {
    Matrix4hd M;
    M.setConstant(HD1(0.0));
    return M;
  };
  Eigen::Matrix4d F0;
  F0.col(0) = Vec4d(0, 1, 0, 0);
  F0.col(1) = Vec4d(0, 0, 1, 0);
  F0.col(2) = Vec4d(0, 0, 0, 1);
  F0.col(3) = Vec4d(1, 0, 0, 0);
  FramedCurve fc = solve_frame_system(Mfn, F0, SpaceForm{1, 1}, {0.0, 1.0}, 128);
  FrameJet j = fc.jet(0.73);
  CHECK((j.gamma.point - Vec4d(0, 1, 0, 0)).norm() < 1e-13);
  CHECK(j.gamma.d1.norm() < 1e-13);
  CHECK((j.e2.point - Vec4d(1, 0, 0, 0)).norm() < 1e-13);
}

TEST_CASE("solve_frame_system flags a vanishing-speed generating curve") {
  // htilde = 0 in the exponential-curve system: gamma' = 0 everywhere
  FramedCurve fc = families::ds3_exponential_curve(profile_const(0.0), {0.0, 1.0}, 256);
  CHECK(fc.vertices.size() > 200);  // flagged along the whole scan
  CHECK(max_frame_residual(fc) < 1e-8);
  FrameJet j = fc.jet(0.5);
  CHECK(j.gamma.d1.norm() < 1e-12);
}

TEST_CASE("solve_frame_system keeps orthonormality and is step-doubling consistent") {
  Profile h = profile_const(1.0);
  FramedCurve a = families::ds3_exponential_curve(h, {0.0, 1.0}, 512);
  FramedCurve b = families::ds3_exponential_curve(h, {0.0, 1.0}, 1024);
  CHECK(max_frame_residual(a) < 1e-8);
  double diff = 0;
  for (int k = 0; k <= 16; ++k) {
    double u = k / 16.0;
    FrameJet ja = a.jet(u), jb = b.jet(u);
    diff = std::max(diff, (ja.gamma.point - jb.gamma.point).norm());
    diff = std::max(diff, (ja.e1.point - jb.e1.point).norm());
  }
  CHECK(diff < 1e-9);
}

TEST_CASE("solve_frame_system rejects matrices outside the isometry Lie algebra") {
  MatrixFn bad = [](const HD1&) {
    Matrix4hd M;
    M.setConstant(HD1(0.0));
    M(0, 0) = HD1(1.0);  // diagonal entries scale norms
    return M;
  };
  Eigen::Matrix4d F0;
  F0.col(0) = Vec4d(0, 1, 0, 0);
  F0.col(1) = Vec4d(0, 0, 1, 0);
  F0.col(2) = Vec4d(0, 0, 0, 1);
  F0.col(3) = Vec4d(1, 0, 0, 0);
  CHECK_THROWS_AS(solve_frame_system(bad, F0, SpaceForm{1, 1}, {0.0, 1.0}, 16), NotInLieAlgebra);
}

TEST_CASE("frame_residuals reports a deliberate frame defect") {
  FramedCurve fc = families::circle(SpaceForm{0, 0}, 1.0);
  FramedCurve bad = fc;
  // push e1 along the tangent direction by 1e-3
  bad.kernel = make_jet_kernel<3>([base = fc.kernel](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    base->eval(u, out);
    Vec4<S> t;
    t << S(0.0), -sin(u), cos(u), S(0.0);
    out[1] += t * S(1e-3);
  });
  double r = std::abs(frame_residuals(bad, 0.9)["<e1,gamma'>"]);
  CHECK(r == doctest::Approx(1e-3).epsilon(0.05));  // |gamma'| = 1 here
}

TEST_CASE("parabolic triples: closed forms satisfy all invariants") {
  for (const ParabolicData& pd :
       {families::h3_parabolic_geodesic(), families::ds3_parabolic_geodesic(),
        families::ads3_parabolic_geodesic()}) {
    for (int k = 0; k <= 8; ++k) {
      double u = pd.domain.a + pd.domain.length() * k / 8.0;
      CHECK(frame_residuals(pd, u).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("parabolic triples from the (a, b) system satisfy all invariants") {
  ParabolicData pd = families::h3_parabolic_ab(profile_const(0.3),
                                               profile_poly({1.0, 0.0, -1.0}), {-1.0, 1.0});
  for (int k = 0; k <= 16; ++k) {
    double u = -1.0 + 2.0 * k / 16.0;
    CHECK(frame_residuals(pd, u).max_abs() < 1e-9);
  }
  // prescribed curvature functions are recovered from the triple
  double u0 = 0.37;
  ParabolicJet j = pd.jet(u0);
  double a = inner(j.delta_plus.d2, j.e1.point, pd.p);
  double b = inner(j.delta_plus.d2, j.delta_minus.point, pd.p);
  CHECK(a == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(b == doctest::Approx(1.0 - u0 * u0).epsilon(1e-9));
}

TEST_CASE("the parabolic difference curve lies on the null cone") {
  ParabolicData pd = families::h3_parabolic_ab(profile_const(0.1), profile_const(0.4),
                                               {-1.0, 1.0});
  for (int k = 0; k <= 10; ++k) {
    double u = -1.0 + 2.0 * k / 10.0;
    ParabolicJet j = pd.jet(u);
    Vec4d gamma = -double(pd.eps * pd.eps_pp) * j.delta_plus.point + j.delta_minus.point;
    CHECK(std::abs(inner(gamma, gamma, pd.p)) < 1e-10);
    CHECK(gamma.norm() > 0.5);  // nonzero: genuinely on the cone
  }
}

TEST_CASE("spline curves interpolate samples and expose exact cubic jets") {
  std::vector<double> us;
  std::vector<Vec4d> xs;
  for (int k = 0; k <= 40; ++k) {
    double u = 2.0 * M_PI * k / 40.0;
    us.push_back(u);
    xs.push_back(Vec4d(0.0, 3.0 * std::cos(u), 3.0 * std::sin(u), 0.0));
  }
  Curve c = spline_curve(SpaceForm{0, 0}, us, xs);
  CurveJet j = c.jet3(1.234);
  CHECK((j.point - Vec4d(0, 3 * std::cos(1.234), 3 * std::sin(1.234), 0)).norm() < 1e-4);
  CHECK((j.d1 - Vec4d(0, -3 * std::sin(1.234), 3 * std::cos(1.234), 0)).norm() < 1e-3);
  CHECK(j.d3.has_value());
}
