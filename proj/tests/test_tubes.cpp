#include <doctest.h>

#include <cmath>

#include "cpc/cli_driver.hpp"
#include "cpc/examples.hpp"
#include "cpc/families.hpp"
#include "cpc/geometry.hpp"
#include "cpc/tubes.hpp"

using namespace cpc;

namespace {

double max_quadric_residual(const SurfacePatch& sp, int n = 33) {
  GridSpec g = make_grid(sp, n, n);
  double m = 0;
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) {
      Vec4d x = sp.eval(g.u_at(i), g.v_at(j));
      m = std::max(m, std::abs(value_of(quadric_residual(x, sp.space))));
    }
  return m;
}

PrincipalData pc_at(const SurfacePatch& sp, double u, double v) {
  return principal_curvatures(sp, u, v);
}

}  // namespace

TEST_CASE("critical constant") {
  CHECK(critical_constant(0, 1, 1, 2.0) == 0.25);
  CHECK(critical_constant(-1, 1, 1, 1.0) == 0.0);  // exact zero
  CHECK(critical_constant(-1, 1, 1, 2.0) == -0.75);
}

TEST_CASE("trichotomy classification") {
  CHECK(classify_tube(0.25) == TubeKind::Elliptic);
  CHECK(classify_tube(-0.75) == TubeKind::Hyperbolic);
  CHECK(classify_tube(0.0) == TubeKind::Parabolic);
  CHECK(classify_tube(critical_constant(-1, 1, 1, 1.0)) == TubeKind::Parabolic);
}

TEST_CASE("tube distance") {
  CHECK(tube_distance(0, 1, 0.5) == 0.5);
  CHECK(tube_distance(0, -1, 0.5) == 0.5);
  CHECK(tube_distance(1, 1, 1.0) == doctest::Approx(M_PI / 4).epsilon(1e-15));
  CHECK(tube_distance(-1, 1, 0.5) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  CHECK(tube_distance(-1, 1, 2.0) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(tube_distance(-1, 1, 1.0), ParabolicHasNoDistance);
}

TEST_CASE("the admissibility table rejects sign triples that are not rows") {
  CHECK_THROWS_AS(find_theorem_row(SpaceForm{1, 0}, -1, -1, TubeKind::Elliptic, 1.0),
                  WrongClassification);
  CHECK_THROWS_AS(classify_spec(SpaceForm{0, 1}, -1, 1, 1.0), WrongClassification);
  // branch violation: h3 elliptic requires r < 1
  CHECK_THROWS_AS(find_theorem_row(SpaceForm{1, -1}, 1, 1, TubeKind::Elliptic, 2.0),
                  WrongClassification);
  CHECK(find_theorem_row(SpaceForm{1, -1}, 1, 1, TubeKind::Hyperbolic, 2.0).id == 4);
}

TEST_CASE("elliptic tube: circular cylinder in e3") {
  FramedCurve fc = families::line(SpaceForm{0, 0}, 1);
  SurfacePatch sp = elliptic_tube(fc, 1.0, 1, 1);
  CHECK(max_quadric_residual(sp) < 1e-12);
  for (double v : {0.0, 1.0, 3.0}) {
    PrincipalData pd = pc_at(sp, 0.3, v);
    CHECK(pd.k2 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pd.k1 == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("elliptic tube: torus over a circle of radius 3") {
  FramedCurve fc = families::circle(SpaceForm{0, 0}, 3.0);
  SurfacePatch sp = elliptic_tube(fc, 1.0, 1, 1);
  CHECK(sp.tube->c == doctest::Approx(1.0));
  for (double u : {0.0, 1.1})
    for (double v : {0.0, 0.9, M_PI / 2, 2.5}) {
      PrincipalData pd = pc_at(sp, u, v);
      CHECK(pd.k2 == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(pd.k1 == doctest::Approx(std::cos(v) / (3.0 + std::cos(v))).epsilon(1e-9));
    }
}

TEST_CASE("elliptic tube: flat band around a great circle of s3") {
  FramedCurve fc = families::great_circle_s3();
  SurfacePatch sp = elliptic_tube(fc, 1.0, 1, 1);
  CHECK(sp.tube->d == doctest::Approx(M_PI / 4));
  CHECK(max_quadric_residual(sp) < 1e-12);
  for (double u : {0.2, 2.0})
    for (double v : {0.0, 1.3}) {
      PrincipalData pd = pc_at(sp, u, v);
      CHECK(pd.k2 == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(pd.k1 == doctest::Approx(-1.0).epsilon(1e-9));
      CHECK_FALSE(pd.umbilic);
    }
}

TEST_CASE("elliptic tube constructor rejections") {
  FramedCurve h3 = families::h3_geodesic();
  CHECK_THROWS_AS(elliptic_tube(h3, 2.0, 1, 1), WrongClassification);  // c < 0
  FramedCurve ds3 = families::ds3_geodesic_spacelike();                // signature (-1, +1)
  CHECK_THROWS_AS(elliptic_tube(ds3, 0.5, 1, 1), FrameSignatureMismatch);
}

TEST_CASE("hyperbolic tube: equidistant surface about an h3 geodesic") {
  FramedCurve fc = families::ds3_geodesic_spacelike();
  SurfacePatch sp = hyperbolic_tube(fc, 2.0, 1, 1);
  CHECK(sp.space == SpaceForm{1, -1});
  CHECK(sp.tube->c == doctest::Approx(-0.75));
  CHECK(*sp.tube->d == doctest::Approx(std::atanh(0.5)));  // acoth(2)
  CHECK(max_quadric_residual(sp) < 1e-12);
  for (double u : {0.0, 2.0})
    for (double v : {-1.5, 0.0, 1.0}) {
      PrincipalData pd = pc_at(sp, u, v);
      CHECK(pd.k2 == doctest::Approx(0.5).epsilon(1e-10));
      CHECK(pd.k1 == doctest::Approx(2.0).epsilon(1e-10));
    }
}

TEST_CASE("hyperbolic tube: cylinder over a hyperbola in l3") {
  FramedCurve fc = families::line(SpaceForm{1, 0}, 2);  // spacelike line, e1 timelike
  CHECK(fc.frame_signature == std::array<int, 2>{-1, 1});
  SurfacePatch sp = hyperbolic_tube(fc, 1.0, -1, 1);
  CHECK(sp.space == SpaceForm{1, 0});
  for (double v : {-1.0, 0.0, 1.5}) {
    PrincipalData pd = pc_at(sp, 0.4, v);
    CHECK(pd.k2 == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("hyperbolic tube rejects wrong classification") {
  FramedCurve fc = families::ds3_geodesic_spacelike();
  CHECK_THROWS_AS(hyperbolic_tube(fc, 0.5, 1, 1), WrongClassification);  // c > 0 for r < 1
}

TEST_CASE("parabolic tube: membership and kappa1 profile") {
  ParabolicData pd = families::h3_parabolic_geodesic();
  SurfacePatch sp = parabolic_tube(pd);
  CHECK(sp.space == SpaceForm{1, -1});
  CHECK(max_quadric_residual(sp) < 1e-12);
  // (a, b) = (0, 0): kappa1 = 1 - 1/(1 + v^2/2), never umbilic off v = 0
  for (double u : {-1.0, 0.5})
    for (double v : {0.7, 1.5, -1.2}) {
      PrincipalData pc = pc_at(sp, u, v);
      double expect = 1.0 - 1.0 / (1.0 + v * v / 2.0);
      CHECK(pc.k2 == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(pc.k1 == doctest::Approx(expect).epsilon(1e-9));
      CHECK_FALSE(pc.umbilic);
    }
}

TEST_CASE("parabolic membership identity holds for all three closed-form triples") {
  for (const ParabolicData& pd :
       {families::h3_parabolic_geodesic(), families::ds3_parabolic_geodesic(),
        families::ads3_parabolic_geodesic()}) {
    SurfacePatch sp = parabolic_tube(pd, Interval{-1.2, 1.2});
    CHECK(max_quadric_residual(sp) < 1e-12);
  }
}

TEST_CASE("parabolic tube rejects corrupted data") {
  ParabolicData pd = families::h3_parabolic_geodesic();
  ParabolicData bad = pd;
  bad.kernel = make_jet_kernel<3>([base = pd.kernel](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    base->eval(u, out);
    out[2][0] += S(1e-3);  // break <e1, delta+> orthogonality
  });
  CHECK_THROWS_AS(parabolic_tube(bad), InvalidParabolicData);
}

TEST_CASE("classification consistency: constructor kind equals classify_tube(c)") {
  SurfacePatch e = elliptic_tube(families::h3_geodesic(), 0.5, 1, 1);
  CHECK(classify_tube(e.tube->c) == TubeKind::Elliptic);
  SurfacePatch h = hyperbolic_tube(families::ds3_geodesic_spacelike(), 2.0, 1, 1);
  CHECK(classify_tube(h.tube->c) == TubeKind::Hyperbolic);
  SurfacePatch p = parabolic_tube(families::h3_parabolic_geodesic());
  CHECK(classify_tube(p.tube->c) == TubeKind::Parabolic);
}

TEST_CASE("elliptic distance invariant on proper tubes") {
  SurfacePatch torus = elliptic_tube(families::circle(SpaceForm{0, 0}, 3.0), 1.0, 1, 1);
  CheckResult c1 = elliptic_distance_check(torus, make_grid(torus, 17, 17));
  CHECK(c1.pass);
  CHECK(c1.max_residual < 1e-9);
  SurfacePatch clifford = elliptic_tube(families::great_circle_s3(), 1.0, 1, 1);
  CheckResult c2 = elliptic_distance_check(clifford, make_grid(clifford, 17, 17));
  CHECK(c2.pass);
  SurfacePatch h3e = elliptic_tube(families::h3_geodesic(), 0.5, 1, 1);
  CheckResult c3 = elliptic_distance_check(h3e, make_grid(h3e, 9, 9));
  CHECK(c3.pass);
}

TEST_CASE("polar surface of the h3 equidistant tube") {
  SurfacePatch sp = hyperbolic_tube(families::ds3_geodesic_spacelike(), 2.0, 1, 1);
  SurfacePatch pol = polar_surface(sp);
  CHECK(pol.space == SpaceForm{1, 1});  // spacelike surface of ds3
  CHECK(max_quadric_residual(pol, 17) < 1e-10);
  // constant principal curvature r = 2 on the polar
  for (double u : {0.1, 1.2})
    for (double v : {-1.0, 0.5}) {
      PrincipalData pd = principal_curvatures(pol, u, v);
      CHECK(pd.k2 == doctest::Approx(2.0).epsilon(1e-8));
      CHECK(pd.k1 == doctest::Approx(0.5).epsilon(1e-8));
    }
  // the polar's own normal points back into h3
  auto [N, eps_p] = unit_normal(pol, 0.3, 0.4);
  CHECK(eps_p == -1);
}

TEST_CASE("polar of polar returns the original surface pointwise") {
  SurfacePatch sp = hyperbolic_tube(families::ds3_geodesic_spacelike(), 2.0, 1, 1);
  SurfacePatch pol2 = polar_surface(polar_surface(sp));
  CHECK(pol2.space == sp.space);
  GridSpec g = make_grid(sp, 17, 17);
  double m = 0;
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) {
      Vec4d a = sp.eval(g.u_at(i), g.v_at(j));
      Vec4d b = pol2.eval(g.u_at(i), g.v_at(j));
      m = std::max(m, (a - b).norm());
    }
  CHECK(m < 1e-9);
}

TEST_CASE("polar spectral reciprocity") {
  SurfacePatch sp = hyperbolic_tube(families::ds3_geodesic_spacelike(), 2.0, 1, 1);
  CheckResult cr = polar_spectral_check(sp);
  CHECK(cr.pass);
  CHECK(cr.max_residual < 1e-7);
}

TEST_CASE("polar rejects flat spaces and vanishing curvatures") {
  SurfacePatch cyl = elliptic_tube(families::line(SpaceForm{0, 0}, 1), 1.0, 1, 1);
  CHECK_THROWS_AS(polar_surface(cyl), FlatSpaceHasNoPolar);
  // kappa1 of the geodesic parabolic tube vanishes at v = 0
  SurfacePatch par = parabolic_tube(families::h3_parabolic_geodesic());
  CHECK_THROWS_AS(polar_surface(par), VanishingPrincipalCurvature);
}

TEST_CASE("exchanging the parabolic triple components yields the polar") {
  ParabolicData pd = families::h3_parabolic_geodesic();
  const double ee = double(pd.eps * pd.eps_pp);  // -1 here
  // the polar is an immersion only where kappa1 != 0: stay at v > 0
  SurfacePatch sp = parabolic_tube(pd, Interval{0.4, 1.6});
  SurfacePatch pol = polar_surface(sp);

  ParabolicData ex;
  ex.p = pd.p;
  ex.eps = -pd.eps;
  ex.eps_pp = pd.eps_pp;
  ex.domain = pd.domain;
  ex.kernel = make_jet_kernel<3>([base = pd.kernel](auto u, auto* out) {
    using S = std::decay_t<decltype(u)>;
    Vec4<S> d[3];
    base->eval(u, d);
    out[0] = d[1];
    out[1] = -d[0];
    out[2] = d[2];
  });
  SurfacePatch ex_tube = parabolic_tube(ex, Interval{-2.0, 2.0});

  // pol(u, v) = sign * ex_tube(u, ee * v) for one global sign
  Vec4d p0 = pol.eval(0.3, 0.8);
  Vec4d q0 = ex_tube.eval(0.3, ee * 0.8);
  double sign = (p0 - q0).norm() < (p0 + q0).norm() ? 1.0 : -1.0;
  double m = 0;
  for (double u : {-0.6, 0.0, 0.9})
    for (double v : {0.5, 1.0, 1.5}) {
      Vec4d a = pol.eval(u, v);
      Vec4d b = ex_tube.eval(u, ee * v);
      m = std::max(m, (a - sign * b).norm());
    }
  CHECK(m < 1e-10);
}
