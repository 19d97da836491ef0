#pragma once

// The four example families: flat tubes over integral curves in E^3 and L^3,
// parabolic tubes in H^3 with prescribed (a, b), and the dS^3-frame-driven
// hyperbolic tubes in H^3, each with its closed-form kappa_1 oracle.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cpc/families.hpp"
#include "cpc/tubes.hpp"

namespace cpc {

enum class ExampleId { E3Tube, L3Tube, H3Parabolic, H3Hyperbolic };

inline std::string to_string(ExampleId id) {
  switch (id) {
    case ExampleId::E3Tube: return "e3_tube";
    case ExampleId::L3Tube: return "l3_tube";
    case ExampleId::H3Parabolic: return "h3_parabolic";
    default: return "h3_hyperbolic";
  }
}

struct ExampleFamily {
  ExampleId id = ExampleId::E3Tube;
  double r = 1.0;            // fixed to 1 for H3Parabolic
  Profile h;                 // profile (or htilde) for E3/L3/H3Hyperbolic
  Profile a, b;              // curvature functions for H3Parabolic
  Interval u_domain{-2.0, 2.0};
};

inline SurfacePatch build_example(const ExampleFamily& fam,
                                  std::optional<Interval> vdom = std::nullopt) {
  SurfacePatch sp;
  switch (fam.id) {
    case ExampleId::E3Tube: {
      FramedCurve fc = families::flat_tube_curve(0, fam.h, fam.u_domain);
      sp = elliptic_tube(fc, fam.r, 1, 1, vdom);
      break;
    }
    case ExampleId::L3Tube: {
      FramedCurve fc = families::flat_tube_curve(1, fam.h, fam.u_domain);
      sp = hyperbolic_tube(fc, fam.r, 1, -1, vdom);
      break;
    }
    case ExampleId::H3Parabolic: {
      ParabolicData pd = families::h3_parabolic_ab(fam.a, fam.b, fam.u_domain);
      sp = parabolic_tube(pd, vdom);
      break;
    }
    case ExampleId::H3Hyperbolic: {
      if (fam.r <= 1.0) throw WrongClassification("h3_hyperbolic example needs r > 1");
      FramedCurve fc = families::ds3_exponential_curve(fam.h, fam.u_domain);
      sp = hyperbolic_tube(fc, fam.r, 1, 1, vdom);
      break;
    }
  }
  // a domain consisting of non-immersion points only is rejected outright
  GridSpec probe = make_grid(sp, 9, 9);
  bool any = false;
  for (int i = 0; i < probe.nu && !any; ++i)
    for (int j = 0; j < probe.nv && !any; ++j)
      any = immersion_at(sp.jet(probe.u_at(i), probe.v_at(j)), sp.space.p);
  if (!any) throw ImmersionViolation("requested domain contains no immersion points");
  sp.origin = PatchOrigin::Example;
  sp.label = to_string(fam.id) + " / " + sp.label;
  return sp;
}

// closed-form second principal curvature of the family; nullopt where the
// formula degenerates (non-immersion points)
inline std::optional<double> closed_form_kappa1(const ExampleFamily& fam, double u, double v) {
  switch (fam.id) {
    case ExampleId::E3Tube: {
      double den = fam.h->eval(u) + fam.r * std::cos(v);
      if (std::abs(den) < 1e-12) return std::nullopt;
      return std::cos(v) / den;
    }
    case ExampleId::L3Tube: {
      double den = fam.h->eval(u) + fam.r * std::cosh(v);
      if (std::abs(den) < 1e-12) return std::nullopt;
      return std::cosh(v) / den;
    }
    case ExampleId::H3Parabolic: {
      double a = fam.a->eval(u), b = fam.b->eval(u);
      double den = 1.0 - a * v + (1.0 - b) * v * v / 2.0;
      if (std::abs(den) < 1e-12) return std::nullopt;
      return 1.0 - (1.0 - b) / den;
    }
    default: {
      double h = fam.h->eval(u), ev = std::exp(v);
      double den = h + fam.r * ev;
      if (std::abs(den) < 1e-12) return std::nullopt;
      return (fam.r * h + ev) / den;
    }
  }
}

// ---------------------------------------------------------------------------
// crosscheck against the published closed form for the r > 1 family in H^3

struct CrosscheckReport {
  double max_discrepancy = 0.0;
  std::vector<std::string> notes;
};

// Published form, coordinates (x, y), constant principal curvature R < 1:
//   (h + R(1-R^2) e^{s y}) / (R h + (1-R^2) e^{s y}),  s = sqrt(1-R^2),
// with the mixed h(y)/h(x) of the printed formula read as the same variable.
inline double published_kappa1(double h, double y, double R) {
  double s = std::sqrt(1.0 - R * R);
  double E = std::exp(s * y);
  return (h + R * (1.0 - R * R) * E) / (R * h + (1.0 - R * R) * E);
}

// Verifies that the frame-system formula (r htilde + e^v)/(htilde + r e^v)
// composed with htilde = h/(1-R^2), v = sqrt(1-R^2) y, r = 1/R reproduces the
// published expression.
inline CrosscheckReport aledo_galvez_crosscheck(double R, const Profile& h, int nx = 16,
                                                int ny = 16, Interval xr = {-1.0, 1.0},
                                                Interval yr = {-1.0, 1.0}) {
  if (!(R > 0.0 && R < 1.0)) throw WrongClassification("crosscheck needs 0 < R < 1");
  CrosscheckReport rep;
  rep.notes.push_back("printed formula mixes h(y) and h(x); both read as h(x)");
  rep.notes.push_back(
      "substitution htilde = h/(1-R^2); the printed direction (1-R^2)h does not "
      "reproduce the published expression");
  const double s = std::sqrt(1.0 - R * R);
  const double r = 1.0 / R;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      double x = xr.a + (xr.b - xr.a) * i / double(nx - 1);
      double y = yr.a + (yr.b - yr.a) * j / double(ny - 1);
      double hv = h->eval(x);
      double htilde = hv / (1.0 - R * R);
      double v = s * y;
      double ev = std::exp(v);
      double moi = (r * htilde + ev) / (htilde + r * ev);
      double gal = published_kappa1(hv, y, R);
      rep.max_discrepancy = std::max(rep.max_discrepancy, std::abs(moi - gal));
    }
  return rep;
}

}  // namespace cpc
