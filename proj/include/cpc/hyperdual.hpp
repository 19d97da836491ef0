#pragma once

// Second-order hyper-dual scalars: carry a value together with exact first and
// second partial derivatives with respect to two parameters (u, v) through any
// composition of smooth operations.  Nesting HyperDual<HyperDual<...>> extends
// the construction to higher derivative order; evaluation kernels in this
// project are instantiated up to three levels deep.

#include <cmath>
#include <type_traits>

#include <Eigen/Core>

namespace cpc {

template <typename T>
struct HyperDual {
  T v{};    // value
  T du{};   // d/du
  T dv{};   // d/dv
  T duu{};  // d2/du2
  T duv{};  // d2/dudv
  T dvv{};  // d2/dv2

  HyperDual() = default;
  HyperDual(const T& value) : v(value) {}
  HyperDual(T value, T pdu, T pdv, T pduu, T pduv, T pdvv)
      : v(std::move(value)), du(std::move(pdu)), dv(std::move(pdv)),
        duu(std::move(pduu)), duv(std::move(pduv)), dvv(std::move(pdvv)) {}

  template <typename U,
            std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>, int> = 0>
  HyperDual(U value) : v(T(value)) {}

  // seeds for the two independent variables
  static HyperDual variable_u(T value) { return {std::move(value), T(1), T(0), T(0), T(0), T(0)}; }
  static HyperDual variable_v(T value) { return {std::move(value), T(0), T(1), T(0), T(0), T(0)}; }

  HyperDual operator-() const { return {-v, -du, -dv, -duu, -duv, -dvv}; }

  HyperDual& operator+=(const HyperDual& o) {
    v += o.v; du += o.du; dv += o.dv; duu += o.duu; duv += o.duv; dvv += o.dvv;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    v -= o.v; du -= o.du; dv -= o.dv; duu -= o.duu; duv -= o.duv; dvv -= o.dvv;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) { *this = *this * o; return *this; }
  HyperDual& operator/=(const HyperDual& o) { *this = *this / o; return *this; }

  friend HyperDual operator+(const HyperDual& a, const HyperDual& b) {
    return {a.v + b.v, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv, a.dvv + b.dvv};
  }
  friend HyperDual operator-(const HyperDual& a, const HyperDual& b) {
    return {a.v - b.v, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv, a.dvv - b.dvv};
  }
  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.v * b.v,
            a.du * b.v + a.v * b.du,
            a.dv * b.v + a.v * b.dv,
            a.duu * b.v + T(2) * a.du * b.du + a.v * b.duu,
            a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
            a.dvv * b.v + T(2) * a.dv * b.dv + a.v * b.dvv};
  }
  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    return a * reciprocal(b);
  }

  friend HyperDual operator+(const HyperDual& a, double b) { return a + HyperDual(T(b)); }
  friend HyperDual operator+(double a, const HyperDual& b) { return HyperDual(T(a)) + b; }
  friend HyperDual operator-(const HyperDual& a, double b) { return a - HyperDual(T(b)); }
  friend HyperDual operator-(double a, const HyperDual& b) { return HyperDual(T(a)) - b; }
  friend HyperDual operator*(const HyperDual& a, double b) { return a * HyperDual(T(b)); }
  friend HyperDual operator*(double a, const HyperDual& b) { return HyperDual(T(a)) * b; }
  friend HyperDual operator/(const HyperDual& a, double b) { return a / HyperDual(T(b)); }
  friend HyperDual operator/(double a, const HyperDual& b) { return HyperDual(T(a)) / b; }
};

inline double value_of(double x) { return x; }
template <typename T>
double value_of(const HyperDual<T>& x) { return value_of(x.v); }

// f(g) with f evaluated at g.v: needs f, f', f'' there.
template <typename T>
HyperDual<T> chain(const HyperDual<T>& g, const T& f, const T& f1, const T& f2) {
  return {f,
          f1 * g.du,
          f1 * g.dv,
          f2 * g.du * g.du + f1 * g.duu,
          f2 * g.du * g.dv + f1 * g.duv,
          f2 * g.dv * g.dv + f1 * g.dvv};
}

template <typename T>
HyperDual<T> reciprocal(const HyperDual<T>& x) {
  T iv = T(1) / x.v;
  T iv2 = iv * iv;
  return chain(x, iv, -iv2, T(2) * iv2 * iv);
}

using std::abs;
using std::atan;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;
using std::tanh;

template <typename T>
HyperDual<T> sin(const HyperDual<T>& x) {
  T s = sin(x.v), c = cos(x.v);
  return chain(x, s, c, -s);
}
template <typename T>
HyperDual<T> cos(const HyperDual<T>& x) {
  T s = sin(x.v), c = cos(x.v);
  return chain(x, c, -s, -c);
}
template <typename T>
HyperDual<T> tan(const HyperDual<T>& x) {
  T t = tan(x.v);
  T sec2 = T(1) + t * t;
  return chain(x, t, sec2, T(2) * t * sec2);
}
template <typename T>
HyperDual<T> sinh(const HyperDual<T>& x) {
  T s = sinh(x.v), c = cosh(x.v);
  return chain(x, s, c, s);
}
template <typename T>
HyperDual<T> cosh(const HyperDual<T>& x) {
  T s = sinh(x.v), c = cosh(x.v);
  return chain(x, c, s, c);
}
template <typename T>
HyperDual<T> tanh(const HyperDual<T>& x) {
  T t = tanh(x.v);
  T sech2 = T(1) - t * t;
  return chain(x, t, sech2, T(-2) * t * sech2);
}
template <typename T>
HyperDual<T> exp(const HyperDual<T>& x) {
  T e = exp(x.v);
  return chain(x, e, e, e);
}
template <typename T>
HyperDual<T> log(const HyperDual<T>& x) {
  T iv = T(1) / x.v;
  return chain(x, log(x.v), iv, -iv * iv);
}
template <typename T>
HyperDual<T> sqrt(const HyperDual<T>& x) {
  T r = sqrt(x.v);
  T f1 = T(0.5) / r;
  return chain(x, r, f1, T(-0.5) * f1 / x.v);
}
template <typename T>
HyperDual<T> atan(const HyperDual<T>& x) {
  T d = T(1) + x.v * x.v;
  T f1 = T(1) / d;
  return chain(x, atan(x.v), f1, T(-2) * x.v * f1 * f1);
}
template <typename T>
HyperDual<T> pow(const HyperDual<T>& x, double p) {
  T f = pow(x.v, p);
  T f1 = T(p) * pow(x.v, p - 1.0);
  T f2 = T(p * (p - 1.0)) * pow(x.v, p - 2.0);
  return chain(x, f, f1, f2);
}
template <typename T>
HyperDual<T> abs(const HyperDual<T>& x) {
  return value_of(x) < 0.0 ? -x : x;
}

template <typename T>
bool operator<(const HyperDual<T>& a, const HyperDual<T>& b) { return value_of(a) < value_of(b); }
template <typename T>
bool operator>(const HyperDual<T>& a, const HyperDual<T>& b) { return value_of(a) > value_of(b); }
template <typename T>
bool operator<(const HyperDual<T>& a, double b) { return value_of(a) < b; }
template <typename T>
bool operator>(const HyperDual<T>& a, double b) { return value_of(a) > b; }

using HD1 = HyperDual<double>;            // second-order jets in (u, v)
using HD2 = HyperDual<HD1>;               // one nesting level (polar fields)
using HD3 = HyperDual<HD2>;               // two nesting levels (polar of polar)

}  // namespace cpc

namespace Eigen {
template <typename T>
struct NumTraits<cpc::HyperDual<T>> : NumTraits<double> {
  typedef cpc::HyperDual<T> Real;
  typedef cpc::HyperDual<T> NonInteger;
  typedef cpc::HyperDual<T> Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 6,
    MulCost = 12
  };
};
}  // namespace Eigen
