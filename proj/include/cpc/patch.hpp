#pragma once

// Evaluable surface patches (u,v) -> phi(u,v) in R^4 with exact first and
// second partial derivatives obtained by seeding hyper-dual scalars through
// the patch kernel.

#include <memory>
#include <optional>
#include <string>

#include "cpc/ambient.hpp"
#include "cpc/curves.hpp"
#include "cpc/errors.hpp"

namespace cpc {

enum class TubeKind { Elliptic, Hyperbolic, Parabolic };

inline std::string to_string(TubeKind k) {
  switch (k) {
    case TubeKind::Elliptic: return "elliptic";
    case TubeKind::Hyperbolic: return "hyperbolic";
    default: return "parabolic";
  }
}

enum class PatchOrigin { Tube, Example, External, Polar };

struct Rect {
  Interval u, v;
};

struct SurfaceJet2 {
  Vec4d phi, phi_u, phi_v, phi_uu, phi_uv, phi_vv;
};

class PatchKernel {
 public:
  virtual ~PatchKernel() = default;
  virtual Vec4<double> eval(double u, double v) const = 0;
  virtual Vec4<HD1> eval(const HD1& u, const HD1& v) const = 0;
  virtual Vec4<HD2> eval(const HD2& u, const HD2& v) const = 0;
  virtual Vec4<HD3> eval(const HD3& u, const HD3& v) const = 0;
};

template <typename F>
class PatchKernelOf final : public PatchKernel {
 public:
  explicit PatchKernelOf(F f) : f_(std::move(f)) {}
  Vec4<double> eval(double u, double v) const override { return f_(u, v); }
  Vec4<HD1> eval(const HD1& u, const HD1& v) const override { return f_(u, v); }
  Vec4<HD2> eval(const HD2& u, const HD2& v) const override { return f_(u, v); }
  Vec4<HD3> eval(const HD3& u, const HD3& v) const override { return f_(u, v); }

 private:
  F f_;
};

template <typename F>
std::shared_ptr<const PatchKernel> make_patch_kernel(F f) {
  return std::make_shared<PatchKernelOf<F>>(std::move(f));
}

// classification data carried by tube-built patches
struct TubeInfo {
  TubeKind kind = TubeKind::Elliptic;
  double r = 1.0;
  int eps = 0, eps_p = 1, eps_pp = 1;
  double c = 0.0;                  // critical constant
  std::optional<double> d;         // tube distance, when defined
  double scale = 1.0;              // |1 + eps eps' r^2|^{-1/2}
};

struct SurfacePatch {
  SpaceForm space;
  Rect domain;
  std::optional<double> declared_r;
  std::optional<int> declared_eps_p;
  PatchOrigin origin = PatchOrigin::External;
  std::optional<TubeInfo> tube;
  std::shared_ptr<const PatchKernel> kernel;
  std::string label;

  Vec4d eval(double u, double v) const {
    Vec4d x = kernel->eval(u, v);
    if (!all_finite(x)) throw NumericalBreakdown("patch evaluation produced NaN/Inf");
    return x;
  }

  SurfaceJet2 jet(double u, double v) const {
    Vec4<HD1> x = kernel->eval(HD1::variable_u(u), HD1::variable_v(v));
    SurfaceJet2 j;
    for (int i = 0; i < 4; ++i) {
      j.phi[i] = x[i].v;
      j.phi_u[i] = x[i].du;
      j.phi_v[i] = x[i].dv;
      j.phi_uu[i] = x[i].duu;
      j.phi_uv[i] = x[i].duv;
      j.phi_vv[i] = x[i].dvv;
    }
    if (!all_finite(j.phi) || !all_finite(j.phi_u) || !all_finite(j.phi_v) ||
        !all_finite(j.phi_uu) || !all_finite(j.phi_uv) || !all_finite(j.phi_vv))
      throw NumericalBreakdown("patch jet produced NaN/Inf");
    return j;
  }

  bool in_domain(double u, double v) const {
    return domain.u.contains(u) && domain.v.contains(v);
  }
};

// uniform evaluation grid; v may be periodic (nodes exclude the right end)
struct GridSpec {
  int nu = 64, nv = 64;
  Rect rect;
  bool v_periodic = false;

  double u_at(int i) const { return rect.u.a + (rect.u.b - rect.u.a) * i / double(nu - 1); }
  double v_at(int j) const {
    int den = v_periodic ? nv : nv - 1;
    return rect.v.a + (rect.v.b - rect.v.a) * j / double(den);
  }
};

inline GridSpec make_grid(const SurfacePatch& sp, int nu, int nv) {
  GridSpec g;
  g.nu = nu;
  g.nv = nv;
  g.rect = sp.domain;
  g.v_periodic = sp.tube && sp.tube->kind == TubeKind::Elliptic &&
                 std::abs(sp.domain.v.length() - 2.0 * M_PI) < 1e-9;
  return g;
}

}  // namespace cpc
