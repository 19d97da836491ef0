#include <doctest.h>

#include <cmath>

#include "cpc/hyperdual.hpp"

using namespace cpc;

namespace {

// deterministic uniform in [0,1) independent of the standard library
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
};

}  // namespace

TEST_CASE("hyper-dual jets of a composite expression match closed forms") {
  Rng rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    double u = rng.range(-1.0, 1.0), v = rng.range(-1.0, 1.0);
    HD1 U = HD1::variable_u(u), V = HD1::variable_v(v);
    // f(u,v) = sin(u v) * exp(u) + cosh(v) / (2 + cos(u))
    HD1 f = sin(U * V) * exp(U) + cosh(V) / (2.0 + cos(U));

    double su = std::sin(u * v), cu = std::cos(u * v), eu = std::exp(u);
    double den = 2.0 + std::cos(u);
    CHECK(f.v == doctest::Approx(su * eu + std::cosh(v) / den).epsilon(1e-14));
    CHECK(f.du == doctest::Approx(cu * v * eu + su * eu +
                                  std::cosh(v) * std::sin(u) / (den * den))
                      .epsilon(1e-12));
    CHECK(f.dv == doctest::Approx(cu * u * eu + std::sinh(v) / den).epsilon(1e-12));
    double fuu = eu * (cu * v * v * (-std::tan(u * v)) + 2.0 * cu * v + su) +
                 std::cosh(v) * (std::cos(u) * den + 2.0 * std::sin(u) * std::sin(u)) /
                     (den * den * den);
    // -sin(uv) v^2 term written via tan to reuse cu; rewrite directly:
    fuu = eu * (-su * v * v + 2.0 * cu * v + su) +
          std::cosh(v) * (std::cos(u) * den + 2.0 * std::sin(u) * std::sin(u)) / (den * den * den);
    CHECK(f.duu == doctest::Approx(fuu).epsilon(1e-11));
    CHECK(f.dvv == doctest::Approx(-su * u * u * eu + std::cosh(v) / den).epsilon(1e-11));
    CHECK(f.duv == doctest::Approx(eu * (cu - su * u * v) + cu * u * eu +
                                   std::sinh(v) * std::sin(u) / (den * den))
                       .epsilon(1e-11));
  }
}

TEST_CASE("nested hyper-duals carry third derivatives") {
  // f(u) = exp(2u): extract f''' via one nesting level
  double u = 0.37;
  HD2 U(HD1::variable_u(u), HD1(1.0), HD1(0.0), HD1(0.0), HD1(0.0), HD1(0.0));
  HD2 f = exp(U * 2.0);
  double e = std::exp(2.0 * u);
  CHECK(f.v.v == doctest::Approx(e).epsilon(1e-14));
  CHECK(f.v.du == doctest::Approx(2.0 * e).epsilon(1e-14));
  CHECK(f.v.duu == doctest::Approx(4.0 * e).epsilon(1e-14));
  CHECK(f.du.duu == doctest::Approx(8.0 * e).epsilon(1e-13));
}

TEST_CASE("division and sqrt jets") {
  HD1 U = HD1::variable_u(2.0);
  HD1 g = sqrt(U);
  CHECK(g.v == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.du == doctest::Approx(0.5 / std::sqrt(2.0)));
  CHECK(g.duu == doctest::Approx(-0.25 * std::pow(2.0, -1.5)));
  HD1 h = 1.0 / U;
  CHECK(h.du == doctest::Approx(-0.25));
  CHECK(h.duu == doctest::Approx(0.25));
}
