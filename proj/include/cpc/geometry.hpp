#pragma once

// Verification engine: unit normals, fundamental forms, shape operator,
// principal curvatures and directions, umbilic detection, the pregeodesic
// foliation check and generating-curve reconstruction, all on exact
// hyper-dual jets of a SurfacePatch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cpc/ambient.hpp"
#include "cpc/patch.hpp"

namespace cpc {

inline SurfaceJet2 surface_jet(const SurfacePatch& sp, double u, double v) {
  if (!sp.in_domain(u, v))
    throw OutOfDomain("(" + std::to_string(u) + ", " + std::to_string(v) + ")");
  return sp.jet(u, v);
}

// ---------------------------------------------------------------------------
// unit normal, generic over scalar depth

template <typename S>
struct NormalEval {
  Vec4<S> phi, phi_u, phi_v, phi_vv;
  Vec4<S> N;   // unit normal, canonical cross-product orientation
  S nn;        // <n, n> before normalization
};

template <typename S>
NormalEval<S> eval_normal(const PatchKernel& k, const SpaceForm& space, const S& u, const S& v) {
  using HS = HyperDual<S>;
  Vec4<HS> R = k.eval(HS::variable_u(u), HS::variable_v(v));
  NormalEval<S> r;
  for (int i = 0; i < 4; ++i) {
    r.phi[i] = R[i].v;
    r.phi_u[i] = R[i].du;
    r.phi_v[i] = R[i].dv;
    r.phi_vv[i] = R[i].dvv;
  }
  Vec4<S> n = cross_oriented(r.phi_u, r.phi_v, ambient_axis(space, r.phi), space.p);
  r.nn = inner(n, n, space.p);
  double nnv = value_of(r.nn);
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) scale += value_of(n[i]) * value_of(n[i]);
  if (scale < 1e-300) throw DegenerateTangentPlane("normal direction vanished");
  if (std::abs(nnv) < 1e-12 * scale)
    throw NullNormal("lightlike normal direction");
  S inv = S(1.0) / sqrt(abs(r.nn));
  for (int i = 0; i < 4; ++i) r.N[i] = n[i] * inv;
  return r;
}

// N with ||N||^2 = +-1; orientation fixed by the metric_orthocomplement
// convention applied to (phi_u, phi_v).
inline std::pair<Vec4d, int> unit_normal(const SurfacePatch& sp, double u, double v) {
  SurfaceJet2 j = surface_jet(sp, u, v);
  if (tangent_plane_degenerate(j.phi_u, j.phi_v, sp.space.p))
    throw DegenerateTangentPlane("at (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  auto ne = eval_normal<double>(*sp.kernel, sp.space, u, v);
  return {ne.N, ne.nn > 0 ? 1 : -1};
}

// normal field with first derivatives, differentiated through the whole
// normal computation
struct NormalJet {
  Vec4d N, N_u, N_v;
  int eps_p;
};

inline NormalJet unit_normal_jet(const SurfacePatch& sp, double u, double v) {
  auto ne = eval_normal<HD1>(*sp.kernel, sp.space, HD1::variable_u(u), HD1::variable_v(v));
  NormalJet r;
  for (int i = 0; i < 4; ++i) {
    r.N[i] = ne.N[i].v;
    r.N_u[i] = ne.N[i].du;
    r.N_v[i] = ne.N[i].dv;
  }
  r.eps_p = value_of(ne.nn) > 0 ? 1 : -1;
  return r;
}

// ---------------------------------------------------------------------------
// fundamental forms and principal curvatures

struct FundamentalForms {
  double E = 0, F = 0, G = 0;  // first form
  double e = 0, f = 0, g = 0;  // second form w.r.t. the oriented unit normal
  int eps_p = 1;               // ||N||^2
};

inline FundamentalForms forms_from_jet(const SurfaceJet2& j, const Vec4d& N, int eps_p, int p) {
  FundamentalForms ff;
  ff.E = inner(j.phi_u, j.phi_u, p);
  ff.F = inner(j.phi_u, j.phi_v, p);
  ff.G = inner(j.phi_v, j.phi_v, p);
  ff.e = inner(N, j.phi_uu, p);
  ff.f = inner(N, j.phi_uv, p);
  ff.g = inner(N, j.phi_vv, p);
  ff.eps_p = eps_p;
  return ff;
}

inline FundamentalForms fundamental_forms(const SurfacePatch& sp, double u, double v) {
  SurfaceJet2 j = surface_jet(sp, u, v);
  auto [N, eps_p] = unit_normal(sp, u, v);
  return forms_from_jet(j, N, eps_p, sp.space.p);
}

struct PrincipalData {
  double k1 = 0, k2 = 0;
  Eigen::Vector2d dir1 = Eigen::Vector2d(1, 0), dir2 = Eigen::Vector2d(0, 1);
  bool diagonalizable = true;
  bool umbilic = false;
  int flip = 1;  // sign applied to the normal so that k2 tracks +1/declared_r
};

inline bool umbilic_tolerance(double k1, double k2) {
  return std::abs(k1 - k2) < 1e-6 * (1.0 + std::abs(k1) + std::abs(k2));
}

// Solves the generalized eigenproblem II w = kappa I w.  Complex eigenvalues
// (possible only when the induced metric is indefinite) are reported with
// diagonalizable = false rather than raised.
inline PrincipalData principal_from_forms(const FundamentalForms& ff,
                                          std::optional<double> declared_r) {
  const double a = ff.E * ff.G - ff.F * ff.F;
  const double b = -(ff.E * ff.g - 2.0 * ff.F * ff.f + ff.G * ff.e);
  const double c = ff.e * ff.g - ff.f * ff.f;
  PrincipalData pd;
  const double scale = b * b + std::abs(4.0 * a * c);
  const double disc = b * b - 4.0 * a * c;
  if (disc < -1e-12 * std::max(scale, 1e-300)) {
    pd.diagonalizable = false;
    return pd;
  }
  double sq = std::sqrt(std::max(0.0, disc));
  double k1, k2;
  if (std::abs(b) < 1e-300 && std::abs(a) < 1e-300) {
    pd.diagonalizable = false;
    return pd;
  }
  double q = -0.5 * (b + (b >= 0 ? sq : -sq));
  if (std::abs(q) > 1e-300) {
    k1 = q / a;
    k2 = c / q;
  } else {
    k1 = 0.0;
    k2 = -b / a;
  }

  auto eigvec = [&](double k) -> Eigen::Vector2d {
    double m00 = ff.e - k * ff.E, m01 = ff.f - k * ff.F;
    double m10 = ff.f - k * ff.F, m11 = ff.g - k * ff.G;
    Eigen::Vector2d r0(m00, m01), r1(m10, m11);
    Eigen::Vector2d row = r0.norm() >= r1.norm() ? r0 : r1;
    if (row.norm() < 1e-13 * (std::abs(k) + 1.0)) return {1, 0};  // umbilic: any direction
    Eigen::Vector2d w(-row[1], row[0]);
    return w.normalized();
  };

  // assign k2 to the declared constant direction: the (sign, eigenvalue) pair
  // closest to +1/r; ties broken toward the eigenvector aligned with dv
  int flip = 1;
  int which = 1;  // index of k2 among {k1, k2}
  if (declared_r) {
    double target = 1.0 / *declared_r;
    double best = 1e300;
    for (int s : {1, -1})
      for (int idx : {0, 1}) {
        double cand = s * (idx == 0 ? k1 : k2);
        double err = std::abs(cand - target);
        Eigen::Vector2d w = eigvec(idx == 0 ? k1 : k2);
        double align = std::abs(w[1]);
        double score = err - 1e-12 * align;
        if (score < best - 1e-18) {
          best = score;
          flip = s;
          which = idx;
        }
      }
  } else {
    Eigen::Vector2d w1 = eigvec(k1), w2 = eigvec(k2);
    which = std::abs(w2[1]) >= std::abs(w1[1]) ? 1 : 0;
  }
  double kc = which == 0 ? k1 : k2;
  double ko = which == 0 ? k2 : k1;
  pd.k2 = flip * kc;
  pd.k1 = flip * ko;
  pd.dir2 = eigvec(kc);
  pd.dir1 = eigvec(ko);
  pd.flip = flip;
  pd.umbilic = umbilic_tolerance(pd.k1, pd.k2);
  return pd;
}

inline PrincipalData principal_curvatures(const SurfacePatch& sp, double u, double v) {
  return principal_from_forms(fundamental_forms(sp, u, v), sp.declared_r);
}

// ---------------------------------------------------------------------------
// grid verification

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct CurvatureReport {
  GridSpec grid;
  std::vector<CheckResult> checks;
  std::vector<std::pair<int, int>> umbilic_nodes;
  std::vector<std::pair<int, int>> non_immersion_nodes;
  std::vector<std::pair<int, int>> non_diagonalizable_nodes;
  std::vector<double> k1, k2;           // row-major (i * nv + j); NaN when undefined
  std::vector<std::uint8_t> umbilic, immersed, diagonalizable;

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult& check(const std::string& name) const {
    for (auto& c : checks)
      if (c.name == name) return c;
    throw Error("no check named " + name);
  }
};

inline bool immersion_at(const SurfaceJet2& j, int p) {
  double E = inner(j.phi_u, j.phi_u, p), F = inner(j.phi_u, j.phi_v, p),
         G = inner(j.phi_v, j.phi_v, p);
  double det = E * G - F * F;
  double scale = std::max({j.phi_u.squaredNorm() * j.phi_v.squaredNorm(), 1e-30});
  return std::abs(det) > 1e-12 * scale;
}

// max |k2 - 1/declared_r| over immersed, diagonalizable nodes, plus quadric
// membership; umbilic/non-immersion/non-diagonalizable loci are reported, not
// raised.
inline CurvatureReport constant_pc_verify(const SurfacePatch& sp, const GridSpec& grid,
                                          double tol = 1e-8, double quadric_tol = 1e-10) {
  if (!sp.declared_r) throw Error("constant_pc_verify requires declared_r");
  const double target = 1.0 / *sp.declared_r;
  const int p = sp.space.p;
  CurvatureReport rep;
  rep.grid = grid;
  const size_t n = size_t(grid.nu) * size_t(grid.nv);
  rep.k1.assign(n, std::nan(""));
  rep.k2.assign(n, std::nan(""));
  rep.umbilic.assign(n, 0);
  rep.immersed.assign(n, 1);
  rep.diagonalizable.assign(n, 1);

  double max_k2 = 0.0, max_quadric = 0.0;
  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      const size_t idx = size_t(i) * grid.nv + j;
      SurfaceJet2 jet = sp.jet(u, v);
      max_quadric = std::max(max_quadric, std::abs(value_of(quadric_residual(jet.phi, sp.space))));
      if (!immersion_at(jet, p)) {
        rep.immersed[idx] = 0;
        rep.non_immersion_nodes.emplace_back(i, j);
        continue;
      }
      auto ne = eval_normal<double>(*sp.kernel, sp.space, u, v);
      FundamentalForms ff = forms_from_jet(jet, ne.N, ne.nn > 0 ? 1 : -1, p);
      PrincipalData pd = principal_from_forms(ff, sp.declared_r);
      if (!pd.diagonalizable) {
        rep.diagonalizable[idx] = 0;
        rep.non_diagonalizable_nodes.emplace_back(i, j);
        continue;
      }
      rep.k1[idx] = pd.k1;
      rep.k2[idx] = pd.k2;
      if (pd.umbilic) {
        rep.umbilic[idx] = 1;
        rep.umbilic_nodes.emplace_back(i, j);
      }
      max_k2 = std::max(max_k2, std::abs(pd.k2 - target));
    }

  rep.checks.push_back({"constant_pc", max_k2, tol, max_k2 < tol, ""});
  rep.checks.push_back({"quadric", max_quadric, quadric_tol, max_quadric < quadric_tol, ""});
  return rep;
}

// Pregeodesic foliation: G_u and the du-component of the tangential part of
// phi_vv must vanish along every v-line.  For parabolic tubes phi_vv itself
// must be the (u-only, null) generating curve.
inline std::vector<CheckResult> geodesic_foliation_check(const SurfacePatch& sp,
                                                         const GridSpec& grid,
                                                         double tol = 1e-8) {
  const int p = sp.space.p;
  double max_Gu = 0.0, max_gamma_comp = 0.0;
  bool parabolic = sp.tube && sp.tube->kind == TubeKind::Parabolic;
  double max_pvv_spread = 0.0, max_pvv_null = 0.0;
  std::vector<Vec4d> pvv_ref(grid.nu, Vec4d::Zero());

  for (int i = 0; i < grid.nu; ++i)
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      SurfaceJet2 jet = sp.jet(u, v);
      if (!immersion_at(jet, p)) continue;
      double Gu = 2.0 * inner(jet.phi_uv, jet.phi_v, p);
      max_Gu = std::max(max_Gu, std::abs(Gu));
      double E = inner(jet.phi_u, jet.phi_u, p), F = inner(jet.phi_u, jet.phi_v, p),
             G = inner(jet.phi_v, jet.phi_v, p);
      double det = E * G - F * F;
      double bu = inner(jet.phi_vv, jet.phi_u, p), bv = inner(jet.phi_vv, jet.phi_v, p);
      double a = (G * bu - F * bv) / det;  // Gamma^u_{vv}
      max_gamma_comp = std::max(max_gamma_comp, std::abs(a) * jet.phi_u.norm());
      if (parabolic) {
        max_pvv_null = std::max(max_pvv_null, std::abs(inner(jet.phi_vv, jet.phi_vv, p)));
        if (j == 0)
          pvv_ref[i] = jet.phi_vv;
        else
          max_pvv_spread = std::max(max_pvv_spread, (jet.phi_vv - pvv_ref[i]).norm());
      }
    }

  std::vector<CheckResult> out;
  out.push_back({"foliation_Gu", max_Gu, tol, max_Gu < tol, ""});
  out.push_back({"foliation_geodesic", max_gamma_comp, tol, max_gamma_comp < tol, ""});
  if (parabolic) {
    double m = std::max(max_pvv_spread, max_pvv_null);
    out.push_back({"foliation_parabolic_vv", m, tol, m < tol,
                   "phi_vv must equal the null generating curve"});
  }
  return out;
}

// ---------------------------------------------------------------------------
// generating curve

struct Reconstruction {
  std::vector<double> u;
  std::vector<Vec4d> gamma_tilde;  // v-averaged samples of phi + r N
  double v_spread = 0.0;
  double norm_residual = 0.0;      // against eps eps' eps'' r^2 c, or |x4| when flat
  double expected_norm2 = 0.0;
  int eps = 0, eps_p = 1, eps_pp = 1;
  double c = 0.0, r = 1.0;
};

// critical constant from signs and radius
inline double critical_constant(int eps, int eps_p, int eps_pp, double r) {
  return double(eps_pp) * (double(eps) + double(eps_p) / (r * r));
}

inline Reconstruction reconstruct_generating_curve(const SurfacePatch& sp, const GridSpec& grid) {
  if (!sp.declared_r) throw Error("reconstruction requires declared_r");
  const double r = *sp.declared_r;
  const int p = sp.space.p;
  Reconstruction rec;
  rec.r = r;
  rec.eps = sp.space.eps;
  if (sp.tube) {
    rec.eps_p = sp.tube->eps_p;
    rec.eps_pp = sp.tube->eps_pp;
  } else {
    auto ne = eval_normal<double>(*sp.kernel, sp.space,
                                  0.5 * (grid.rect.u.a + grid.rect.u.b),
                                  0.5 * (grid.rect.v.a + grid.rect.v.b));
    rec.eps_p = value_of(ne.nn) > 0 ? 1 : -1;
    double G = inner(ne.phi_v, ne.phi_v, p);
    rec.eps_pp = G > 0 ? 1 : -1;
  }
  rec.c = critical_constant(rec.eps, rec.eps_p, rec.eps_pp, r);
  rec.expected_norm2 = rec.eps * rec.eps_p * rec.eps_pp * r * r * rec.c;

  rec.u.resize(grid.nu);
  rec.gamma_tilde.resize(grid.nu);
  for (int i = 0; i < grid.nu; ++i) {
    rec.u[i] = grid.u_at(i);
    Vec4d lo = Vec4d::Constant(1e300), hi = Vec4d::Constant(-1e300), sum = Vec4d::Zero();
    int count = 0;
    for (int j = 0; j < grid.nv; ++j) {
      const double u = grid.u_at(i), v = grid.v_at(j);
      SurfaceJet2 jet = sp.jet(u, v);
      if (!immersion_at(jet, p)) continue;
      auto ne = eval_normal<double>(*sp.kernel, sp.space, u, v);
      FundamentalForms ff = forms_from_jet(jet, ne.N, ne.nn > 0 ? 1 : -1, p);
      PrincipalData pd = principal_from_forms(ff, sp.declared_r);
      if (!pd.diagonalizable) continue;
      Vec4d gt = jet.phi + (r * pd.flip) * ne.N;
      lo = lo.cwiseMin(gt);
      hi = hi.cwiseMax(gt);
      sum += gt;
      ++count;
      if (sp.space.flat())
        rec.norm_residual = std::max(rec.norm_residual, std::abs(gt[3]));
      else
        rec.norm_residual =
            std::max(rec.norm_residual, std::abs(inner(gt, gt, p) - rec.expected_norm2));
    }
    if (count == 0) throw NumericalBreakdown("no usable nodes on a v-line");
    rec.gamma_tilde[i] = sum / count;
    rec.v_spread = std::max(rec.v_spread, (hi - lo).maxCoeff());
  }
  return rec;
}

struct NormalizedCurve {
  std::vector<Vec4d> points;
  bool null_cone = false;
  SpaceForm home;           // meaningful when !null_cone
  std::string home_label;   // "h3", "null_cone_1", ...
  double factor = 1.0;
  double max_quadric_residual = 0.0;
};

// gamma = (eps' eps'' sgn c) r^-1 |c|^-1/2 gamma_tilde, or eps'' eps'
// gamma_tilde on the null cone.
inline NormalizedCurve normalize_generating_curve(const std::vector<Vec4d>& gamma_tilde,
                                                  double c, double r, const SpaceForm& space,
                                                  int eps_p, int eps_pp,
                                                  double null_tol = 1e-8) {
  NormalizedCurve out;
  const int p = space.p;
  const int eps = space.eps;
  if (!space.flat() && std::abs(c) < 1e-14) {
    out.null_cone = true;
    out.home_label = "null_cone_" + std::to_string(p);
    out.factor = double(eps_pp * eps_p);
    for (auto& gt : gamma_tilde) {
      Vec4d g = out.factor * gt;
      out.points.push_back(g);
      out.max_quadric_residual = std::max(out.max_quadric_residual,
                                          std::abs(inner(g, g, p)));
    }
    (void)null_tol;
    return out;
  }
  double sgn_c = c > 0 ? 1.0 : -1.0;
  out.factor = double(eps_p * eps_pp) * sgn_c / (r * std::sqrt(std::abs(c)));
  if (space.flat())
    out.home = space;
  else
    out.home = SpaceForm(p, int(double(eps * eps_p * eps_pp) * sgn_c));
  out.home_label = out.home.name();
  for (auto& gt : gamma_tilde) {
    Vec4d g = out.factor * gt;
    out.points.push_back(g);
    out.max_quadric_residual =
        std::max(out.max_quadric_residual, std::abs(value_of(quadric_residual(g, out.home))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// finite-difference cross-check oracle (independent of the hyper-dual path)

// central differences with one Richardson extrapolation step
inline SurfaceJet2 fd_jet(const SurfacePatch& sp, double u, double v, double h = 1e-4) {
  auto f = [&](double uu, double vv) { return sp.eval(uu, vv); };
  auto d1 = [&](bool along_u, double step) {
    return along_u ? (f(u + step, v) - f(u - step, v)) / (2 * step)
                   : (f(u, v + step) - f(u, v - step)) / (2 * step);
  };
  auto d2 = [&](bool along_u, double step) {
    return along_u ? (f(u + step, v) - 2 * f(u, v) + f(u - step, v)) / (step * step)
                   : (f(u, v + step) - 2 * f(u, v) + f(u, v - step)) / (step * step);
  };
  auto dmix = [&](double step) {
    return (f(u + step, v + step) - f(u + step, v - step) - f(u - step, v + step) +
            f(u - step, v - step)) /
           (4 * step * step);
  };
  auto rich = [&](auto&& g) { return (4.0 * g(h / 2) - g(h)) / 3.0; };
  SurfaceJet2 j;
  j.phi = f(u, v);
  j.phi_u = rich([&](double s) { return d1(true, s); });
  j.phi_v = rich([&](double s) { return d1(false, s); });
  j.phi_uu = rich([&](double s) { return d2(true, s); });
  j.phi_vv = rich([&](double s) { return d2(false, s); });
  j.phi_uv = rich([&](double s) { return dmix(s); });
  return j;
}

}  // namespace cpc
