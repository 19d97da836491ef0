#include <doctest.h>

#include <cmath>

#include "cpc/ambient.hpp"

using namespace cpc;

namespace {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  double next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return double(s >> 11) * 0x1p-53;
  }
  double range(double a, double b) { return a + (b - a) * next(); }
  Vec4d vec(double a, double b) {
    Vec4d v;
    for (int i = 0; i < 4; ++i) v[i] = range(a, b);
    return v;
  }
};

}  // namespace

TEST_CASE("inner products carry the metric signs") {
  CHECK(inner(Vec4d(1, 0, 0, 0), Vec4d(1, 0, 0, 0), 1) == -1.0);
  CHECK(inner(Vec4d(0, 0, 1, 0), Vec4d(0, 0, 1, 0), 1) == 1.0);
  CHECK(inner(Vec4d(1, 1, 0, 0), Vec4d(1, 1, 0, 0), 1) == 0.0);
}

TEST_CASE("inner is symmetric and bilinear") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    int p = int(rng.range(0, 3));
    Vec4d x = rng.vec(-2, 2), y = rng.vec(-2, 2), z = rng.vec(-2, 2);
    double a = rng.range(-3, 3);
    CHECK(std::abs(inner(x, y, p) - inner(y, x, p)) < 1e-12);
    Vec4d w = x + a * y;
    CHECK(std::abs(inner(w, z, p) - inner(x, z, p) - a * inner(y, z, p)) < 1e-12);
  }
}

TEST_CASE("quadric residual identifies membership") {
  CHECK(quadric_residual(Vec4d(0, 0, 0, 1), SpaceForm{0, 1}) == 0.0);
  CHECK(quadric_residual(Vec4d(1, 0, 0, 0), SpaceForm{1, -1}) == 0.0);
  CHECK(quadric_residual(Vec4d(0, 0, 1, 1), SpaceForm{0, 0}) == 1.0);
}

TEST_CASE("space forms admit exactly the seven sign pairs") {
  CHECK_NOTHROW(SpaceForm(0, 0));
  CHECK_NOTHROW(SpaceForm(2, 1));
  CHECK_THROWS_AS(SpaceForm(0, -1), InvalidScene);
  CHECK_THROWS_AS(SpaceForm(2, 0), InvalidScene);
  CHECK_THROWS_AS(SpaceForm(3, 1), InvalidScene);
}

TEST_CASE("metric orthocomplement: flat cases reduce to the cross product") {
  SpaceForm e3{0, 0};
  Vec4d x(0.3, -0.2, 0.9, 0.0);
  Vec4d n = metric_orthocomplement(x, Vec4d(1, 0, 0, 0), Vec4d(0, 1, 0, 0), e3);
  CHECK(n[0] == 0.0);
  CHECK(n[1] == 0.0);
  CHECK(n[2] == 1.0);  // right-handed: e_x x e_y = e_z
  CHECK(n[3] == 0.0);

  SpaceForm l3{1, 0};
  Vec4d nl = metric_orthocomplement(Vec4d::Zero(), Vec4d(1, 0, 0, 0), Vec4d(0, 1, 0, 0), l3);
  CHECK(std::abs(nl[2]) == 1.0);
  CHECK(inner(nl, nl, 1) == 1.0);
}

TEST_CASE("metric orthocomplement in h3") {
  SpaceForm h3{1, -1};
  Vec4d x(1, 0, 0, 0), a(0, 1, 0, 0), b(0, 0, 1, 0);
  Vec4d n = metric_orthocomplement(x, a, b, h3);
  CHECK(std::abs(n[3]) > 0.0);
  CHECK(n.head<3>().norm() == 0.0);
  CHECK(inner(n, n, 1) > 0.0);  // spacelike unit direction
}

TEST_CASE("orthocomplement is orthogonal to all inputs on random data") {
  Rng rng(99);
  int accepted = 0;
  for (int t = 0; t < 3000 && accepted < 1000; ++t) {
    int pick = int(rng.range(0, 7));
    static const int ps[7] = {0, 1, 0, 1, 1, 2, 2};
    static const int es[7] = {0, 0, 1, -1, 1, -1, 1};
    SpaceForm Q{ps[pick], es[pick]};
    Vec4d x = rng.vec(-1, 1);
    if (!Q.flat()) {
      double n2 = inner(x, x, Q.p);
      if (std::abs(n2) < 0.1) continue;
      x /= std::sqrt(std::abs(n2));
      if (Q.eps * inner(x, x, Q.p) < 0) continue;  // wrong sheet sign
    } else {
      x[3] = 0.0;
    }
    Vec4d a = rng.vec(-1, 1), b = rng.vec(-1, 1);
    if (Q.flat()) {
      a[3] = b[3] = 0.0;
    } else {
      a -= inner(a, x, Q.p) / inner(x, x, Q.p) * x;
      b -= inner(b, x, Q.p) / inner(x, x, Q.p) * x;
    }
    if (linearly_dependent(a, b) || tangent_plane_degenerate(a, b, Q.p)) continue;
    Vec4d n;
    try {
      n = metric_orthocomplement(x, a, b, Q);
    } catch (const DegenerateTangentPlane&) {
      continue;
    }
    double scale = n.norm() * std::max(a.norm(), b.norm());
    CHECK(std::abs(inner(n, a, Q.p)) < 1e-10 * std::max(1.0, scale));
    CHECK(std::abs(inner(n, b, Q.p)) < 1e-10 * std::max(1.0, scale));
    if (!Q.flat()) CHECK(std::abs(inner(n, x, Q.p)) < 1e-10 * std::max(1.0, scale));
    ++accepted;
  }
  CHECK(accepted == 1000);
}

TEST_CASE("degenerate tangent planes are rejected") {
  SpaceForm l3{1, 0};
  // span{timelike+spacelike null mix}: <a,a> = 0, <a,b> = 0, <b,b> = 1 has
  // nonzero Gram det; build a truly degenerate plane containing a null
  // direction orthogonal to the other vector
  Vec4d a(1, 1, 0, 0), b(0, 0, 1, 0);
  CHECK(std::abs(inner(a, a, 1)) < 1e-15);
  CHECK_THROWS_AS(metric_orthocomplement(Vec4d::Zero(), a, b, l3), DegenerateTangentPlane);
  // linear dependence
  SpaceForm e3{0, 0};
  CHECK_THROWS_AS(
      metric_orthocomplement(Vec4d::Zero(), Vec4d(1, 2, 0, 0), Vec4d(2, 4, 0, 0), e3),
      DegenerateTangentPlane);
}

TEST_CASE("polar space is an involution on the non-flat forms") {
  CHECK(polar_space(SpaceForm{1, -1}) == SpaceForm{1, 1});
  CHECK(polar_space(SpaceForm{1, 1}) == SpaceForm{1, -1});
  CHECK(polar_space(SpaceForm{2, -1}) == SpaceForm{2, 1});
  for (auto [p, e] : {std::pair{0, 1}, {1, -1}, {1, 1}, {2, -1}, {2, 1}}) {
    SpaceForm Q{p, e};
    CHECK(polar_space(polar_space(Q)) == Q);
  }
  CHECK_THROWS_AS(polar_space(SpaceForm{0, 0}), FlatSpaceHasNoPolar);
  CHECK_THROWS_AS(polar_space(SpaceForm{1, 0}), FlatSpaceHasNoPolar);
}

TEST_CASE("the involution of R^4_2 negates inner products and swaps the quadrics") {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    Vec4d x = rng.vec(-2, 2), y = rng.vec(-2, 2);
    CHECK(std::abs(inner(anti_isometry(x), anti_isometry(y), 2) + inner(x, y, 2)) < 1e-12);
  }
  // a point of Q^3_{2,1} maps onto Q^3_{2,-1}
  Vec4d q(0.3, 0.4, 0.5, std::sqrt(1.0 + 0.3 * 0.3 + 0.4 * 0.4 - 0.5 * 0.5));
  CHECK(std::abs(quadric_residual(q, SpaceForm{2, 1})) < 1e-12);
  CHECK(std::abs(quadric_residual(anti_isometry(q), SpaceForm{2, -1})) < 1e-12);
}
