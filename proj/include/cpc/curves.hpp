#pragma once

// Framed generating curves: evaluable curves in a space form together with
// orthonormal normal frames (e1, e2), or parabolic triples (delta+, delta-, e1).
// Curves come either as closed forms (exact jets at any nesting depth of the
// hyper-dual scalars) or as ODE/spline-backed evaluators whose jets are exact
// through third order.

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cpc/ambient.hpp"
#include "cpc/errors.hpp"
#include "cpc/hyperdual.hpp"

namespace cpc {

struct Interval {
  double a = 0.0, b = 1.0;
  double length() const { return b - a; }
  bool contains(double u, double slack = 1e-9) const {
    return u >= a - slack && u <= b + slack;
  }
};

// ---------------------------------------------------------------------------
// jets

struct CurveJet {
  Vec4d point = Vec4d::Zero();
  Vec4d d1 = Vec4d::Zero();
  Vec4d d2 = Vec4d::Zero();
  std::optional<Vec4d> d3;
};

// Evaluation kernel producing N 4-vectors as functions of one parameter, at
// every scalar depth used by the project.
template <int N>
class JetKernel {
 public:
  virtual ~JetKernel() = default;
  virtual void eval(double u, Vec4<double>* out) const = 0;
  virtual void eval(const HD1& u, Vec4<HD1>* out) const = 0;
  virtual void eval(const HD2& u, Vec4<HD2>* out) const = 0;
  virtual void eval(const HD3& u, Vec4<HD3>* out) const = 0;
  virtual int jet_order() const { return 3; }
};

using CurveKernel = JetKernel<1>;
using FrameKernel = JetKernel<3>;

template <int N, typename F>
class JetKernelOf final : public JetKernel<N> {
 public:
  explicit JetKernelOf(F f) : f_(std::move(f)) {}
  void eval(double u, Vec4<double>* out) const override { f_(u, out); }
  void eval(const HD1& u, Vec4<HD1>* out) const override { f_(u, out); }
  void eval(const HD2& u, Vec4<HD2>* out) const override { f_(u, out); }
  void eval(const HD3& u, Vec4<HD3>* out) const override { f_(u, out); }

 private:
  F f_;
};

template <int N, typename F>
std::shared_ptr<const JetKernel<N>> make_jet_kernel(F f) {
  return std::make_shared<JetKernelOf<N, F>>(std::move(f));
}

namespace detail {

template <int N>
std::array<CurveJet, N> jets2(const JetKernel<N>& k, double u) {
  Vec4<HD1> out[N];
  k.eval(HD1::variable_u(u), out);
  std::array<CurveJet, N> r;
  for (int n = 0; n < N; ++n)
    for (int i = 0; i < 4; ++i) {
      r[n].point[i] = out[n][i].v;
      r[n].d1[i] = out[n][i].du;
      r[n].d2[i] = out[n][i].duu;
    }
  return r;
}

template <int N>
std::array<CurveJet, N> jets3(const JetKernel<N>& k, double u) {
  HD2 uu(HD1::variable_u(u), HD1(1.0), HD1(0.0), HD1(0.0), HD1(0.0), HD1(0.0));
  Vec4<HD2> out[N];
  k.eval(uu, out);
  std::array<CurveJet, N> r;
  for (int n = 0; n < N; ++n) {
    Vec4d d3;
    for (int i = 0; i < 4; ++i) {
      r[n].point[i] = out[n][i].v.v;
      r[n].d1[i] = out[n][i].v.du;
      r[n].d2[i] = out[n][i].v.duu;
      d3[i] = out[n][i].du.duu;
    }
    if (k.jet_order() >= 3) r[n].d3 = d3;
  }
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// curve and frame containers

struct Curve {
  SpaceForm space;
  Interval domain;
  std::shared_ptr<const CurveKernel> kernel;

  CurveJet jet(double u) const { return detail::jets2<1>(*kernel, u)[0]; }
  CurveJet jet3(double u) const { return detail::jets3<1>(*kernel, u)[0]; }
};

struct FrameJet {
  CurveJet gamma, e1, e2;
};

// u |-> (gamma(u), e1(u), e2(u)); frame orthonormal in the normal space of
// gamma with the declared signature (||e1||^2, ||e2||^2).
struct FramedCurve {
  SpaceForm space;
  std::array<int, 2> frame_signature{1, 1};
  Interval domain;
  std::shared_ptr<const FrameKernel> kernel;
  std::vector<double> vertices;  // grid parameters where gamma' vanished

  FrameJet jet(double u) const {
    auto a = detail::jets2<3>(*kernel, u);
    return {a[0], a[1], a[2]};
  }
  FrameJet jet3(double u) const {
    auto a = detail::jets3<3>(*kernel, u);
    return {a[0], a[1], a[2]};
  }
};

struct ParabolicJet {
  CurveJet delta_plus, delta_minus, e1;
};

// u |-> (delta+(u), delta-(u), e1(u)) with ||delta+||^2 = eps,
// ||delta-||^2 = -eps, ||e1||^2 = eps_pp and the mutual orthogonality
// relations of a parabolic triple.
struct ParabolicData {
  int p = 1;
  int eps = -1;     // delta+ lives in Q^3_{p,eps}, delta- in Q^3_{p,-eps}
  int eps_pp = 1;
  Interval domain;
  std::shared_ptr<const FrameKernel> kernel;  // outputs (delta+, delta-, e1)

  SpaceForm space_plus() const { return {p, eps}; }
  SpaceForm space_minus() const { return {p, -eps}; }

  ParabolicJet jet(double u) const {
    auto a = detail::jets2<3>(*kernel, u);
    return {a[0], a[1], a[2]};
  }
};

// ---------------------------------------------------------------------------
// residuals

struct ResidualRecord {
  std::vector<std::pair<std::string, double>> items;
  double max_abs() const {
    double m = 0;
    for (auto& [k, x] : items) m = std::max(m, std::abs(x));
    return m;
  }
  double operator[](const std::string& key) const {
    for (auto& [k, x] : items)
      if (k == key) return x;
    throw Error("no residual named " + key);
  }
};

inline ResidualRecord frame_residuals(const FramedCurve& fc, double u) {
  FrameJet j = fc.jet(u);
  const int p = fc.space.p;
  ResidualRecord r;
  r.items.emplace_back("quadric(gamma)", value_of(quadric_residual(j.gamma.point, fc.space)));
  if (!fc.space.flat())
    r.items.emplace_back("<gamma,gamma'>", inner(j.gamma.point, j.gamma.d1, p));
  const Vec4d* es[2] = {&j.e1.point, &j.e2.point};
  for (int k = 0; k < 2; ++k) {
    std::string nm = k == 0 ? "e1" : "e2";
    if (!fc.space.flat())
      r.items.emplace_back("<" + nm + ",gamma>", inner(*es[k], j.gamma.point, p));
    else
      r.items.emplace_back(nm + "_slice", (*es[k])[3]);
    r.items.emplace_back("<" + nm + ",gamma'>", inner(*es[k], j.gamma.d1, p));
    r.items.emplace_back("|" + nm + "|^2-sign",
                         inner(*es[k], *es[k], p) - fc.frame_signature[k]);
  }
  r.items.emplace_back("<e1,e2>", inner(j.e1.point, j.e2.point, p));
  return r;
}

inline ResidualRecord frame_residuals(const ParabolicData& pd, double u) {
  ParabolicJet j = pd.jet(u);
  const int p = pd.p;
  ResidualRecord r;
  r.items.emplace_back("|d+|^2-eps", inner(j.delta_plus.point, j.delta_plus.point, p) - pd.eps);
  r.items.emplace_back("|d-|^2+eps", inner(j.delta_minus.point, j.delta_minus.point, p) + pd.eps);
  r.items.emplace_back("<d+,d->", inner(j.delta_plus.point, j.delta_minus.point, p));
  r.items.emplace_back("<d+',d->", inner(j.delta_plus.d1, j.delta_minus.point, p));
  r.items.emplace_back("<d-',d+>", inner(j.delta_minus.d1, j.delta_plus.point, p));
  r.items.emplace_back("|e1|^2-eps''", inner(j.e1.point, j.e1.point, p) - pd.eps_pp);
  r.items.emplace_back("<e1,d+>", inner(j.e1.point, j.delta_plus.point, p));
  r.items.emplace_back("<e1,d->", inner(j.e1.point, j.delta_minus.point, p));
  r.items.emplace_back("<e1,d+'>", inner(j.e1.point, j.delta_plus.d1, p));
  r.items.emplace_back("<e1,d-'>", inner(j.e1.point, j.delta_minus.d1, p));
  return r;
}

// ---------------------------------------------------------------------------
// metric Gram-Schmidt

// Subtract metric projections of w onto the given vectors (each paired with
// its own squared norm), then normalize to the requested sign.
inline Vec4d metric_normalize(Vec4d w, int target_sign, int p,
                              const std::vector<std::pair<Vec4d, double>>& against) {
  for (auto& [v, vv] : against) {
    if (std::abs(vv) < 1e-14) continue;
    w -= (inner(w, v, p) / vv) * v;
  }
  double ww = inner(w, w, p);
  if (std::abs(ww) < 1e-12 * std::max(w.squaredNorm(), 1e-300))
    throw FrameSignatureUnavailable("normal direction is null or vanishing");
  if ((ww > 0 ? 1 : -1) != target_sign)
    throw FrameSignatureUnavailable("requested causal character not available");
  return w / std::sqrt(std::abs(ww));
}

// ---------------------------------------------------------------------------
// Taylor-stack helpers shared by ODE-backed kernels

namespace detail {

template <typename S>
Vec4<S> taylor4(const Eigen::Matrix4d& F0, const Eigen::Matrix4d& F1,
                const Eigen::Matrix4d& F2, const Eigen::Matrix4d& F3, int col,
                double sign, const S& step) {
  Vec4<S> out;
  for (int i = 0; i < 4; ++i) {
    S acc = S(F0(i, col)) + step * (S(F1(i, col)) +
            step * (S(F2(i, col) / 2.0) + step * S(F3(i, col) / 6.0)));
    out[i] = S(sign) * acc;
  }
  return out;
}

template <typename S>
Vec4<S> taylor_vec(const std::array<Vec4d, 4>& c, const S& step) {
  Vec4<S> out;
  for (int i = 0; i < 4; ++i)
    out[i] = S(c[0][i]) + step * (S(c[1][i]) +
             step * (S(c[2][i] / 2.0) + step * S(c[3][i] / 6.0)));
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// moving-frame ODE: F' = F * M(u)

using Matrix4hd = Eigen::Matrix<HD1, 4, 4>;
using MatrixFn = std::function<Matrix4hd(const HD1& u)>;  // entries with u-jets

struct MatrixJets {
  Eigen::Matrix4d M, M1, M2;
};

inline MatrixJets matrix_jets(const MatrixFn& fn, double u) {
  Matrix4hd m = fn(HD1::variable_u(u));
  MatrixJets r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      r.M(i, j) = m(i, j).v;
      r.M1(i, j) = m(i, j).du;
      r.M2(i, j) = m(i, j).duu;
    }
  return r;
}

// Dense RK4 solution of F' = F M(u); evaluation between nodes re-integrates one
// substep and expands a third-order Taylor stack (F M, F(M^2+M'), ...), so the
// returned jets are exact through third order given the node values.
class OdeFrameSolution {
 public:
  OdeFrameSolution(MatrixFn Mfn, Eigen::Matrix4d F0, Interval dom, int steps)
      : Mfn_(std::move(Mfn)), dom_(dom), h_((dom.b - dom.a) / steps) {
    nodes_.reserve(steps + 1);
    nodes_.push_back(F0);
    Eigen::Matrix4d F = F0;
    for (int k = 0; k < steps; ++k) {
      F = rk4(F, dom_.a + k * h_, h_);
      nodes_.push_back(F);
    }
  }

  const Interval& domain() const { return dom_; }

  Eigen::Matrix4d at(double u) const {
    int k = node_index(u);
    double un = dom_.a + k * h_;
    Eigen::Matrix4d F = nodes_[size_t(k)];
    if (std::abs(u - un) > 1e-15 * std::max(1.0, std::abs(u))) F = rk4(F, un, u - un);
    return F;
  }

  template <typename S>
  void eval_cols(const S& u, const std::array<std::pair<int, double>, 4>& sel, int nsel,
                 Vec4<S>* out) const {
    double uq = value_of(u);
    Eigen::Matrix4d F0 = at(uq);
    MatrixJets mj = matrix_jets(Mfn_, uq);
    Eigen::Matrix4d A2 = mj.M * mj.M + mj.M1;
    Eigen::Matrix4d A2p = mj.M1 * mj.M + mj.M * mj.M1 + mj.M2;
    Eigen::Matrix4d A3 = mj.M * A2 + A2p;
    Eigen::Matrix4d F1 = F0 * mj.M, F2 = F0 * A2, F3 = F0 * A3;
    S step = u - S(uq);
    for (int k = 0; k < nsel; ++k)
      out[k] = detail::taylor4(F0, F1, F2, F3, sel[k].first, sel[k].second, step);
  }

 private:
  int node_index(double u) const {
    int k = int(std::floor((u - dom_.a) / h_));
    return std::max(0, std::min<int>(k, int(nodes_.size()) - 1));
  }

  Eigen::Matrix4d Mval(double u) const {
    return matrix_jets(Mfn_, u).M;
  }

  Eigen::Matrix4d rk4(const Eigen::Matrix4d& F, double u, double h) const {
    Eigen::Matrix4d k1 = F * Mval(u);
    Eigen::Matrix4d k2 = (F + 0.5 * h * k1) * Mval(u + 0.5 * h);
    Eigen::Matrix4d k3 = (F + 0.5 * h * k2) * Mval(u + 0.5 * h);
    Eigen::Matrix4d k4 = (F + h * k3) * Mval(u + h);
    return F + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  MatrixFn Mfn_;
  Interval dom_;
  double h_;
  std::vector<Eigen::Matrix4d> nodes_;
};

// Kernel exposing selected (column, sign) slots of an ODE frame solution.
class OdeColumnsKernel final : public FrameKernel {
 public:
  OdeColumnsKernel(std::shared_ptr<const OdeFrameSolution> sol,
                   std::array<std::pair<int, double>, 4> sel, int nsel)
      : sol_(std::move(sol)), sel_(sel), nsel_(nsel) {}

  void eval(double u, Vec4<double>* out) const override { sol_->eval_cols(u, sel_, nsel_, out); }
  void eval(const HD1& u, Vec4<HD1>* out) const override { sol_->eval_cols(u, sel_, nsel_, out); }
  void eval(const HD2& u, Vec4<HD2>* out) const override { sol_->eval_cols(u, sel_, nsel_, out); }
  void eval(const HD3& u, Vec4<HD3>* out) const override { sol_->eval_cols(u, sel_, nsel_, out); }

 private:
  std::shared_ptr<const OdeFrameSolution> sol_;
  std::array<std::pair<int, double>, 4> sel_;
  int nsel_;
};

inline Eigen::Vector4d frame_gram_diag(const Eigen::Matrix4d& F, int p) {
  Eigen::Vector4d d;
  for (int j = 0; j < 4; ++j) {
    Vec4d c = F.col(j);
    d[j] = inner(c, c, p);
  }
  return d;
}

// Integrates F' = F M(u).  The column Gram matrix of F0 must be diag(+-1) and
// M must be skew-compatible with it (<M a, b> + <a, M b> = 0); otherwise
// NotInLieAlgebra.  Returns gamma = column 0, frame = columns 2 and 3.
inline FramedCurve solve_frame_system(const MatrixFn& Mfn, const Eigen::Matrix4d& F0,
                                      const SpaceForm& curve_space, Interval dom,
                                      int steps = 2048) {
  const int p = curve_space.p;
  Eigen::Matrix4d eta = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Vec4d a = F0.col(i), b = F0.col(j);
      eta(i, j) = inner(a, b, p);
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double want = i == j ? (eta(i, i) > 0 ? 1.0 : -1.0) : 0.0;
      if (std::abs(eta(i, j) - want) > 1e-9)
        throw NotInLieAlgebra("initial frame is not orthonormal");
    }
  for (int k = 0; k <= 8; ++k) {
    double u = dom.a + (dom.b - dom.a) * k / 8.0;
    Eigen::Matrix4d M = matrix_jets(Mfn, u).M;
    Eigen::Matrix4d C = eta * M + M.transpose() * eta;
    if (C.cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, M.cwiseAbs().maxCoeff()))
      throw NotInLieAlgebra("M(u) is not compatible with the frame signature");
  }

  auto sol = std::make_shared<OdeFrameSolution>(Mfn, F0, dom, steps);

  double eg = eta(0, 0);
  if (std::abs(eg - curve_space.eps) > 1e-9 && !curve_space.flat())
    throw NotInLieAlgebra("gamma column norm does not match the requested space");

  FramedCurve fc;
  fc.space = curve_space;
  fc.frame_signature = {eta(2, 2) > 0 ? 1 : -1, eta(3, 3) > 0 ? 1 : -1};
  fc.domain = dom;
  fc.kernel = std::make_shared<OdeColumnsKernel>(
      sol, std::array<std::pair<int, double>, 4>{{{0, 1.0}, {2, 1.0}, {3, 1.0}, {0, 0.0}}}, 3);

  // vertex scan: parameters where gamma' = h e0 degenerates
  for (int k = 0; k <= 256; ++k) {
    double u = dom.a + (dom.b - dom.a) * k / 256.0;
    Eigen::Matrix4d F = sol->at(u);
    Vec4d g1 = (F * matrix_jets(Mfn, u).M).col(0);
    if (g1.norm() < 1e-10) fc.vertices.push_back(u);
  }
  return fc;
}

// ---------------------------------------------------------------------------
// parallel transport of a normal frame along a curve

// Normal-parallel transport: e' = -(<e, gamma''>/<T,T>) T keeps e orthogonal
// to gamma, gamma' and parallel in the normal connection.
class TransportKernel final : public FrameKernel {
 public:
  TransportKernel(Curve curve, Vec4d e1_0, Vec4d e2_0, std::array<int, 2> sig, int steps)
      : curve_(std::move(curve)), sig_(sig), h_(curve_.domain.length() / steps) {
    const Interval dom = curve_.domain;
    e1_.reserve(steps + 1);
    e2_.reserve(steps + 1);
    e1_.push_back(e1_0);
    e2_.push_back(e2_0);
    Vec4d e1 = e1_0, e2 = e2_0;
    for (int k = 0; k < steps; ++k) {
      double u = dom.a + k * h_;
      e1 = rk4(e1, u, h_);
      e2 = rk4(e2, u, h_);
      reorthonormalize(e1, e2, u + h_);
      e1_.push_back(e1);
      e2_.push_back(e2);
    }
  }

  void eval(double u, Vec4<double>* out) const override { evalT(u, out); }
  void eval(const HD1& u, Vec4<HD1>* out) const override { evalT(u, out); }
  void eval(const HD2& u, Vec4<HD2>* out) const override { evalT(u, out); }
  void eval(const HD3& u, Vec4<HD3>* out) const override { evalT(u, out); }
  int jet_order() const override { return 2; }

 private:
  template <typename S>
  void evalT(const S& u, Vec4<S>* out) const {
    double uq = value_of(u);
    // gamma at full available order
    Vec4<S> g[1];
    curve_.kernel->eval(u, g);
    out[0] = g[0];
    int k = std::max(0, std::min<int>(int(std::floor((uq - curve_.domain.a) / h_)),
                                      int(e1_.size()) - 1));
    double un = curve_.domain.a + k * h_;
    Vec4d e1 = e1_[size_t(k)], e2 = e2_[size_t(k)];
    if (std::abs(uq - un) > 1e-15) {
      e1 = rk4(e1, un, uq - un);
      e2 = rk4(e2, un, uq - un);
    }
    S step = u - S(uq);
    out[1] = detail::taylor_vec(stack(e1, uq), step);
    out[2] = detail::taylor_vec(stack(e2, uq), step);
  }

  Vec4d rhs(const Vec4d& e, double u) const {
    CurveJet j = curve_.jet(u);
    double q = inner(j.d1, j.d1, curve_.space.p);
    if (std::abs(q) < 1e-12 * std::max(j.d1.squaredNorm(), 1e-300))
      throw RegularityLoss("transport cannot cross a vertex or null tangent at u=" +
                           std::to_string(u));
    return -(inner(e, j.d2, curve_.space.p) / q) * j.d1;
  }

  // e, e', e'' (third coefficient left zero: transported frames carry exact
  // jets through second order)
  std::array<Vec4d, 4> stack(const Vec4d& e, double u) const {
    CurveJet j = curve_.jet3(u);
    const int p = curve_.space.p;
    double q = inner(j.d1, j.d1, p);
    if (std::abs(q) < 1e-12 * std::max(j.d1.squaredNorm(), 1e-300))
      throw RegularityLoss("transport jet at a vertex or null tangent");
    double kk = inner(e, j.d2, p);
    Vec4d e1 = -(kk / q) * j.d1;
    Vec4d g3 = j.d3 ? *j.d3 : Vec4d::Zero();
    double kp = inner(e1, j.d2, p) + inner(e, g3, p);
    double qp = 2.0 * inner(j.d1, j.d2, p);
    double ratio_p = (kp * q - kk * qp) / (q * q);
    Vec4d e2 = -ratio_p * j.d1 - (kk / q) * j.d2;
    return {e, e1, e2, Vec4d::Zero()};
  }

  Vec4d rk4(const Vec4d& e, double u, double h) const {
    Vec4d k1 = rhs(e, u);
    Vec4d k2 = rhs(e + 0.5 * h * k1, u + 0.5 * h);
    Vec4d k3 = rhs(e + 0.5 * h * k2, u + 0.5 * h);
    Vec4d k4 = rhs(e + h * k3, u + h);
    return e + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  void reorthonormalize(Vec4d& e1, Vec4d& e2, double u) const {
    CurveJet j = curve_.jet(u);
    const int p = curve_.space.p;
    std::vector<std::pair<Vec4d, double>> base;
    if (!curve_.space.flat())
      base.emplace_back(j.point, inner(j.point, j.point, p));
    base.emplace_back(j.d1, inner(j.d1, j.d1, p));
    e1 = metric_normalize(e1, sig_[0], p, base);
    base.emplace_back(e1, double(sig_[0]));
    e2 = metric_normalize(e2, sig_[1], p, base);
  }

  Curve curve_;
  std::array<int, 2> sig_;
  double h_;
  std::vector<Vec4d> e1_, e2_;
};

// Availability of a frame signature in the normal bundle at gamma(u0).
inline void check_normal_signature(const Curve& curve, double u0, std::array<int, 2> sig) {
  CurveJet j = curve.jet(u0);
  const int p = curve.space.p;
  // two independent normal directions from cross products with coordinate axes
  std::vector<Vec4d> cand;
  for (int a = 0; a < 4 && cand.size() < 2; ++a) {
    Vec4d axis = Vec4d::Zero();
    axis[a] = 1.0;
    Vec4d n = cross_oriented(j.d1, axis, ambient_axis(curve.space, j.point), p);
    if (n.norm() < 1e-8) continue;
    if (!cand.empty() && linearly_dependent(cand[0], n)) continue;
    cand.push_back(n.normalized());
  }
  if (cand.size() < 2) throw FrameSignatureUnavailable("cannot span the normal bundle");
  Eigen::Matrix2d G;
  G(0, 0) = inner(cand[0], cand[0], p);
  G(0, 1) = G(1, 0) = inner(cand[0], cand[1], p);
  G(1, 1) = inner(cand[1], cand[1], p);
  double det = G.determinant();
  bool indefinite = det < 0;
  bool want_indefinite = sig[0] * sig[1] < 0;
  if (indefinite != want_indefinite)
    throw FrameSignatureUnavailable(indefinite ? "normal bundle metric is indefinite"
                                               : "normal bundle metric is definite");
  if (!indefinite) {
    int s = G(0, 0) > 0 ? 1 : -1;
    if (s != sig[0])
      throw FrameSignatureUnavailable("definite normal bundle has the opposite sign");
  }
}

inline FramedCurve transport_normal_frame(const Curve& curve, const Vec4d& e1_0,
                                          const Vec4d& e2_0, std::array<int, 2> sig,
                                          int steps = 2048) {
  check_normal_signature(curve, curve.domain.a, sig);
  CurveJet j0 = curve.jet(curve.domain.a);
  const int p = curve.space.p;
  auto chk = [&](const Vec4d& e, int s, const char* nm) {
    double r = std::abs(inner(e, e, p) - s) + std::abs(inner(e, j0.d1, p));
    if (!curve.space.flat()) r += std::abs(inner(e, j0.point, p));
    if (r > 1e-7)
      throw FrameSignatureUnavailable(std::string(nm) +
                                      " is not a unit normal vector of the requested sign");
  };
  chk(e1_0, sig[0], "e1");
  chk(e2_0, sig[1], "e2");
  if (std::abs(inner(e1_0, e2_0, p)) > 1e-7)
    throw FrameSignatureUnavailable("initial frame is not orthogonal");

  FramedCurve fc;
  fc.space = curve.space;
  fc.frame_signature = sig;
  fc.domain = curve.domain;
  fc.kernel = std::make_shared<TransportKernel>(curve, e1_0, e2_0, sig, steps);
  return fc;
}

// ---------------------------------------------------------------------------
// natural cubic spline through (u_i, x_i) samples

class SplineCurveKernel final : public CurveKernel {
 public:
  SplineCurveKernel(std::vector<double> u, std::vector<Vec4d> x)
      : u_(std::move(u)), x_(std::move(x)) {
    const size_t n = u_.size();
    if (n < 3 || x_.size() != n) throw InvalidScene("spline needs >= 3 samples");
    for (size_t i = 1; i < n; ++i)
      if (!(u_[i] > u_[i - 1])) throw InvalidScene("spline parameters must increase");
    build();
  }

  void eval(double u, Vec4<double>* out) const override { evalT(u, out); }
  void eval(const HD1& u, Vec4<HD1>* out) const override { evalT(u, out); }
  void eval(const HD2& u, Vec4<HD2>* out) const override { evalT(u, out); }
  void eval(const HD3& u, Vec4<HD3>* out) const override { evalT(u, out); }

 private:
  template <typename S>
  void evalT(const S& u, Vec4<S>* out) const {
    double uq = value_of(u);
    size_t i = interval(uq);
    S t = u - S(u_[i]);
    for (int c = 0; c < 4; ++c)
      out[0][c] = S(a_[i][c]) + t * (S(b_[i][c]) + t * (S(cc_[i][c]) + t * S(d_[i][c])));
  }

  size_t interval(double u) const {
    size_t lo = 0, hi = u_.size() - 1;
    if (u <= u_.front()) return 0;
    if (u >= u_.back()) return u_.size() - 2;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (u_[mid] <= u ? lo : hi) = mid;
    }
    return lo;
  }

  void build() {
    const size_t n = u_.size();
    std::vector<Vec4d> m(n, Vec4d::Zero());  // second derivatives, natural BCs
    std::vector<double> h(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) h[i] = u_[i + 1] - u_[i];
    // tridiagonal solve per component
    std::vector<double> diag(n, 0), sub(n, 0), sup(n, 0);
    std::vector<Vec4d> rhs(n, Vec4d::Zero());
    diag[0] = diag[n - 1] = 1.0;
    for (size_t i = 1; i + 1 < n; ++i) {
      sub[i] = h[i - 1];
      diag[i] = 2.0 * (h[i - 1] + h[i]);
      sup[i] = h[i];
      rhs[i] = 6.0 * ((x_[i + 1] - x_[i]) / h[i] - (x_[i] - x_[i - 1]) / h[i - 1]);
    }
    std::vector<double> cp(n, 0);
    std::vector<Vec4d> dp(n, Vec4d::Zero());
    cp[0] = sup[0] / diag[0];
    dp[0] = rhs[0] / diag[0];
    for (size_t i = 1; i < n; ++i) {
      double den = diag[i] - sub[i] * cp[i - 1];
      cp[i] = sup[i] / den;
      dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / den;
    }
    m[n - 1] = dp[n - 1];
    for (size_t i = n - 1; i-- > 0;) m[i] = dp[i] - cp[i] * m[i + 1];

    a_.resize(n - 1);
    b_.resize(n - 1);
    cc_.resize(n - 1);
    d_.resize(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
      a_[i] = x_[i];
      cc_[i] = m[i] / 2.0;
      d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
      b_[i] = (x_[i + 1] - x_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    }
  }

  std::vector<double> u_;
  std::vector<Vec4d> x_;
  std::vector<Vec4d> a_, b_, cc_, d_;
};

inline Curve spline_curve(const SpaceForm& space, std::vector<double> u, std::vector<Vec4d> x) {
  Curve c;
  c.space = space;
  c.domain = {u.front(), u.back()};
  c.kernel = std::make_shared<SplineCurveKernel>(std::move(u), std::move(x));
  return c;
}

}  // namespace cpc
