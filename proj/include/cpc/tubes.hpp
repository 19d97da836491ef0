#pragma once

// Constructors for elliptic, hyperbolic and parabolic tubes in the six space
// forms, the critical-constant trichotomy, tube distances, the admissibility
// table of sign triples, and polar surfaces.

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "cpc/curves.hpp"
#include "cpc/geometry.hpp"
#include "cpc/patch.hpp"

namespace cpc {

// sign trichotomy; exact zero for rational data, |c| < 1e-14 otherwise
inline TubeKind classify_tube(double c) {
  if (std::abs(c) < 1e-14) return TubeKind::Parabolic;
  return c > 0 ? TubeKind::Elliptic : TubeKind::Hyperbolic;
}

// d = r, arctan r, artanh r (r<1) or arcoth r (r>1) according to eps*eps'
inline double tube_distance(int eps, int eps_p, double r) {
  if (r <= 0) throw WrongClassification("tube radius must be positive");
  const int ee = eps * eps_p;
  if (ee == 0) return r;
  if (ee == 1) return std::atan(r);
  if (std::abs(r - 1.0) < 1e-14)
    throw ParabolicHasNoDistance("eps*eps' = -1 and r = 1");
  return r < 1.0 ? std::atanh(r) : std::atanh(1.0 / r);
}

// ---------------------------------------------------------------------------
// admissibility table

struct TheoremRow {
  int id;
  const char* space;   // target space of the surface
  const char* causal;  // causal character of the surface
  int eps, eps_p, eps_pp;
  TubeKind kind;
  int branch;  // 0: any r, -1: r < 1, +1: r > 1, 2: r = 1
  const char* curve_home;
  const char* d_formula;
};

inline const std::vector<TheoremRow>& theorem_table() {
  static const std::vector<TheoremRow> t = {
      {1, "e3", "spacelike", 0, 1, 1, TubeKind::Elliptic, 0, "e3", "r"},
      {2, "s3", "spacelike", 1, 1, 1, TubeKind::Elliptic, 0, "s3", "atan(r)"},
      {3, "h3", "spacelike", -1, 1, 1, TubeKind::Elliptic, -1, "h3", "atanh(r)"},
      {4, "h3", "spacelike", -1, 1, 1, TubeKind::Hyperbolic, +1, "ds3 (spacelike)", "acoth(r)"},
      {5, "h3", "spacelike", -1, 1, 1, TubeKind::Parabolic, 2, "null cone", "-"},
      {6, "l3", "spacelike", 0, -1, 1, TubeKind::Hyperbolic, 0, "l3 (spacelike)", "r"},
      {7, "l3", "timelike", 0, 1, 1, TubeKind::Elliptic, 0, "l3 (timelike)", "r"},
      {8, "l3", "timelike", 0, 1, -1, TubeKind::Hyperbolic, 0, "l3 (spacelike)", "r"},
      {9, "ds3", "spacelike", 1, -1, 1, TubeKind::Hyperbolic, -1, "ds3 (spacelike)", "atanh(r)"},
      {10, "ds3", "spacelike", 1, -1, 1, TubeKind::Elliptic, +1, "h3", "acoth(r)"},
      {11, "ds3", "spacelike", 1, -1, 1, TubeKind::Parabolic, 2, "null cone", "-"},
      {12, "ds3", "timelike", 1, 1, 1, TubeKind::Elliptic, 0, "ds3 (timelike)", "atan(r)"},
      {13, "ds3", "timelike", 1, 1, -1, TubeKind::Hyperbolic, 0, "ds3 (spacelike)", "atan(r)"},
      {14, "ads3", "spacelike", -1, -1, 1, TubeKind::Hyperbolic, 0, "ads3 (spacelike)", "atan(r)"},
      {15, "ads3", "timelike", -1, 1, 1, TubeKind::Elliptic, -1, "ads3 (timelike)", "atanh(r)"},
      {16, "ads3", "timelike", -1, 1, -1, TubeKind::Elliptic, +1, "ads3t", "acoth(r)"},
      {17, "ads3", "timelike", -1, 1, -1, TubeKind::Parabolic, 2, "null cone", "-"},
  };
  return t;
}

inline bool row_matches_r(const TheoremRow& row, double r) {
  switch (row.branch) {
    case -1: return r < 1.0 - 1e-14;
    case +1: return r > 1.0 + 1e-14;
    case 2: return std::abs(r - 1.0) < 1e-12;
    default: return true;
  }
}

inline std::string admissible_rows_message(const std::string& space) {
  std::ostringstream os;
  os << "admissible rows for " << space << ":";
  for (auto& row : theorem_table())
    if (space == row.space)
      os << " [#" << row.id << " (" << row.eps << "," << row.eps_p << "," << row.eps_pp << ") "
         << to_string(row.kind)
         << (row.branch == -1 ? ", r<1" : row.branch == 1 ? ", r>1" : row.branch == 2 ? ", r=1" : "")
         << "]";
  return os.str();
}

inline const TheoremRow& find_theorem_row(const SpaceForm& target, int eps_p, int eps_pp,
                                          TubeKind kind, double r) {
  for (auto& row : theorem_table()) {
    if (target.name() != row.space || row.eps_p != eps_p || row.eps_pp != eps_pp ||
        row.kind != kind)
      continue;
    if (!row_matches_r(row, r))
      throw WrongClassification("r=" + std::to_string(r) + " violates the branch of row #" +
                                std::to_string(row.id) + "; " + admissible_rows_message(target.name()));
    return row;
  }
  throw WrongClassification("(" + std::to_string(target.eps) + "," + std::to_string(eps_p) + "," +
                            std::to_string(eps_pp) + ") " + to_string(kind) + " in " +
                            target.name() + " is not a row of the classification table; " +
                            admissible_rows_message(target.name()));
}

struct Classification {
  TubeKind kind;
  double c;
  std::optional<double> d;
  int row_id;
  std::string curve_home;
};

inline Classification classify_spec(const SpaceForm& target, int eps_p, int eps_pp, double r) {
  double c = critical_constant(target.eps, eps_p, eps_pp, r);
  TubeKind kind = classify_tube(c);
  const TheoremRow& row = find_theorem_row(target, eps_p, eps_pp, kind, r);
  Classification cl;
  cl.kind = kind;
  cl.c = c;
  if (kind != TubeKind::Parabolic) cl.d = tube_distance(target.eps, eps_p, r);
  cl.row_id = row.id;
  cl.curve_home = row.curve_home;
  return cl;
}

// ---------------------------------------------------------------------------
// tube constructors

namespace detail {

inline void check_curve_frame(const FramedCurve& fc) {
  for (int k = 0; k <= 6; ++k) {
    double u = fc.domain.a + fc.domain.length() * k / 6.0;
    double res = frame_residuals(fc, u).max_abs();
    if (res > 1e-7)
      throw FrameSignatureMismatch("generating frame residual " + std::to_string(res) +
                                   " at u=" + std::to_string(u));
  }
}

inline double tube_scale(int eps, int eps_p, double r) {
  if (eps == 0) return 1.0;
  return 1.0 / std::sqrt(std::abs(1.0 + double(eps * eps_p) * r * r));
}

}  // namespace detail

// phi = |1 + eps eps' r^2|^{-1/2} (gamma + r (cos v e1 + sin v e2)),
// generating curve in Q^3_{p, eps eps' eps''}, frame signature (eps'', eps'').
inline SurfacePatch elliptic_tube(const FramedCurve& fc, double r, int eps_p, int eps_pp,
                                  std::optional<Interval> vdom = std::nullopt) {
  const int eps = fc.space.eps * eps_p * eps_pp;
  const double c = critical_constant(eps, eps_p, eps_pp, r);
  if (r <= 0 || classify_tube(c) != TubeKind::Elliptic)
    throw WrongClassification("elliptic tube needs c > 0, got c=" + std::to_string(c));
  if (fc.frame_signature != std::array<int, 2>{eps_pp, eps_pp})
    throw FrameSignatureMismatch("elliptic tube needs frame signature (eps'', eps'')");
  detail::check_curve_frame(fc);
  SpaceForm target(fc.space.p, eps);
  const TheoremRow& row = find_theorem_row(target, eps_p, eps_pp, TubeKind::Elliptic, r);
  const double scale = detail::tube_scale(eps, eps_p, r);

  SurfacePatch sp;
  sp.space = target;
  sp.domain = {fc.domain, vdom.value_or(Interval{0.0, 2.0 * M_PI})};
  sp.declared_r = r;
  sp.declared_eps_p = eps_p;
  sp.origin = PatchOrigin::Tube;
  sp.tube = TubeInfo{TubeKind::Elliptic, r, eps, eps_p, eps_pp,
                     c, tube_distance(eps, eps_p, r), scale};
  sp.label = "elliptic tube (row " + std::to_string(row.id) + ")";
  sp.kernel = make_patch_kernel([k = fc.kernel, r, scale](auto u, auto v) {
    using S = std::decay_t<decltype(u)>;
    Vec4<S> f[3];
    k->eval(u, f);
    Vec4<S> w = f[1] * cos(v) + f[2] * sin(v);
    return Vec4<S>((f[0] + w * S(r)) * S(scale));
  });
  return sp;
}

// phi = |1 + eps eps' r^2|^{-1/2} (gamma + r (cosh v e1 + sinh v e2)),
// generating curve in Q^3_{p, -eps eps' eps''}, signature (-eps'', eps'').
inline SurfacePatch hyperbolic_tube(const FramedCurve& fc, double r, int eps_p, int eps_pp,
                                    std::optional<Interval> vdom = std::nullopt) {
  const int eps = -fc.space.eps * eps_p * eps_pp;
  const double c = critical_constant(eps, eps_p, eps_pp, r);
  if (r <= 0 || classify_tube(c) != TubeKind::Hyperbolic)
    throw WrongClassification("hyperbolic tube needs c < 0, got c=" + std::to_string(c));
  if (fc.frame_signature != std::array<int, 2>{-eps_pp, eps_pp})
    throw FrameSignatureMismatch("hyperbolic tube needs frame signature (-eps'', eps'')");
  detail::check_curve_frame(fc);
  SpaceForm target(fc.space.p, eps);
  const TheoremRow& row = find_theorem_row(target, eps_p, eps_pp, TubeKind::Hyperbolic, r);
  const double scale = detail::tube_scale(eps, eps_p, r);

  SurfacePatch sp;
  sp.space = target;
  sp.domain = {fc.domain, vdom.value_or(Interval{-2.0, 2.0})};
  sp.declared_r = r;
  sp.declared_eps_p = eps_p;
  sp.origin = PatchOrigin::Tube;
  sp.tube = TubeInfo{TubeKind::Hyperbolic, r, eps, eps_p, eps_pp,
                     c, tube_distance(eps, eps_p, r), scale};
  sp.label = "hyperbolic tube (row " + std::to_string(row.id) + ")";
  sp.kernel = make_patch_kernel([k = fc.kernel, r, scale](auto u, auto v) {
    using S = std::decay_t<decltype(u)>;
    Vec4<S> f[3];
    k->eval(u, f);
    Vec4<S> w = f[1] * cosh(v) + f[2] * sinh(v);
    return Vec4<S>((f[0] + w * S(r)) * S(scale));
  });
  return sp;
}

// phi = (1 - eps eps'' v^2/2) delta+ + v e1 + (v^2/2) delta-; r = 1, eps' = -eps.
inline SurfacePatch parabolic_tube(const ParabolicData& pd,
                                   std::optional<Interval> vdom = std::nullopt) {
  for (int k = 0; k <= 6; ++k) {
    double u = pd.domain.a + pd.domain.length() * k / 6.0;
    double res = frame_residuals(pd, u).max_abs();
    if (res > 1e-7)
      throw InvalidParabolicData("triple residual " + std::to_string(res) +
                                 " at u=" + std::to_string(u));
    ParabolicJet j = pd.jet(u);
    if (j.delta_plus.d1.norm() + j.delta_minus.d1.norm() < 1e-10)
      throw InvalidParabolicData("(delta+, delta-) is not jointly regular at u=" +
                                 std::to_string(u));
  }
  const int eps = pd.eps, eps_p = -pd.eps, eps_pp = pd.eps_pp;
  SpaceForm target(pd.p, eps);
  const TheoremRow& row = find_theorem_row(target, eps_p, eps_pp, TubeKind::Parabolic, 1.0);

  SurfacePatch sp;
  sp.space = target;
  sp.domain = {pd.domain, vdom.value_or(Interval{-2.0, 2.0})};
  sp.declared_r = 1.0;
  sp.declared_eps_p = eps_p;
  sp.origin = PatchOrigin::Tube;
  sp.tube = TubeInfo{TubeKind::Parabolic, 1.0, eps, eps_p, eps_pp, 0.0, std::nullopt, 1.0};
  sp.label = "parabolic tube (row " + std::to_string(row.id) + ")";
  const double ee = double(eps * eps_pp);
  sp.kernel = make_patch_kernel([k = pd.kernel, ee](auto u, auto v) {
    using S = std::decay_t<decltype(u)>;
    Vec4<S> d[3];
    k->eval(u, d);
    S q = v * v * S(0.5);
    return Vec4<S>(d[0] * (S(1.0) - S(ee) * q) + d[2] * v + d[1] * q);
  });
  return sp;
}

// ---------------------------------------------------------------------------
// polar surface

// Unit normal field of a patch, oriented so that the dv-eigenvalue of the base
// surface is positive; an immersion into Q^3_{p, eps'} when no principal
// curvature of the base vanishes.
class PolarKernel final : public PatchKernel {
 public:
  PolarKernel(std::shared_ptr<const PatchKernel> base, SpaceForm base_space)
      : base_(std::move(base)), space_(base_space) {}

  Vec4<double> eval(double u, double v) const override { return evalT(u, v); }
  Vec4<HD1> eval(const HD1& u, const HD1& v) const override { return evalT(u, v); }
  Vec4<HD2> eval(const HD2& u, const HD2& v) const override { return evalT(u, v); }
  Vec4<HD3> eval(const HD3&, const HD3&) const override {
    throw Error("polar kernels support at most two nesting levels of differentiation");
  }

 private:
  template <typename S>
  Vec4<S> evalT(const S& u, const S& v) const {
    auto ne = eval_normal<S>(*base_, space_, u, v);
    double g = value_of(inner(ne.N, ne.phi_vv, space_.p));
    double G = value_of(inner(ne.phi_v, ne.phi_v, space_.p));
    double flip = (g / G) < 0 ? -1.0 : 1.0;
    return Vec4<S>(ne.N * S(flip));
  }

  std::shared_ptr<const PatchKernel> base_;
  SpaceForm space_;
};

inline SurfacePatch polar_surface(const SurfacePatch& sp, int scan = 9,
                                  double vanish_tol = 1e-8) {
  if (sp.space.flat()) throw FlatSpaceHasNoPolar(sp.space.name());
  GridSpec grid = make_grid(sp, scan, scan);
  int eps_p_seen = 0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      SurfaceJet2 jet = sp.jet(u, v);
      if (!immersion_at(jet, sp.space.p)) continue;
      auto ne = eval_normal<double>(*sp.kernel, sp.space, u, v);
      FundamentalForms ff = forms_from_jet(jet, ne.N, ne.nn > 0 ? 1 : -1, sp.space.p);
      PrincipalData pc = principal_from_forms(ff, sp.declared_r);
      if (!pc.diagonalizable) continue;
      if (std::min(std::abs(pc.k1), std::abs(pc.k2)) < vanish_tol)
        throw VanishingPrincipalCurvature("at (" + std::to_string(u) + ", " +
                                          std::to_string(v) + ")");
      if (eps_p_seen == 0) eps_p_seen = ne.nn > 0 ? 1 : -1;
    }
  if (eps_p_seen == 0) throw NumericalBreakdown("no usable sample for the polar map");

  SurfacePatch out;
  out.space = SpaceForm(sp.space.p, eps_p_seen);
  out.domain = sp.domain;
  if (sp.declared_r) out.declared_r = 1.0 / *sp.declared_r;
  out.declared_eps_p = sp.space.eps;
  out.origin = PatchOrigin::Polar;
  out.kernel = std::make_shared<PolarKernel>(sp.kernel, sp.space);
  out.label = sp.label + " / polar";
  return out;
}

// ---------------------------------------------------------------------------
// distance invariant of proper elliptic tubes (eps'' = eps')

inline CheckResult elliptic_distance_check(const SurfacePatch& sp, const GridSpec& grid,
                                           double tol = 1e-8) {
  CheckResult out{"tube_distance", 0.0, tol, false, ""};
  if (!sp.tube || sp.tube->kind != TubeKind::Elliptic || sp.tube->eps_p != sp.tube->eps_pp) {
    out.note = "not applicable";
    out.pass = true;
    return out;
  }
  const TubeInfo& ti = *sp.tube;
  const double d = *ti.d;
  Reconstruction rec = reconstruct_generating_curve(sp, grid);
  NormalizedCurve nc = normalize_generating_curve(rec.gamma_tilde, ti.c, ti.r, sp.space,
                                                  ti.eps_p, ti.eps_pp);
  double maxres = 0.0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      Vec4d phi = sp.eval(grid.u_at(i), grid.v_at(j));
      double dist;
      if (sp.space.flat()) {
        Vec4d delta = phi - nc.points[size_t(i)];
        dist = std::sqrt(std::max(0.0, inner(delta, delta, sp.space.p)));
      } else {
        double ip = inner(phi, nc.points[size_t(i)], sp.space.p);
        int eta = nc.home.eps;
        if (eta > 0)
          dist = std::acos(std::clamp(ip, -1.0, 1.0));
        else
          dist = std::acosh(std::max(1.0, -ip));
      }
      maxres = std::max(maxres, std::abs(dist - d));
    }
  out.max_residual = maxres;
  out.pass = maxres < tol;
  return out;
}

}  // namespace cpc
