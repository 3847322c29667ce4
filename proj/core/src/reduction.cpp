// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include "vortwave/detail/reduction.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "vortwave/errors.hpp"

namespace vortwave::detail {

namespace {

constexpr double kPi = std::numbers::pi;

// Truncated power series in the step t, coefficients of type T.
template <class T>
struct Jet {
  int order = 0;
  std::array<T, 4> c{};
};

template <class T>
bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, TrigTrace>) {
    for (int k = 0; k < T::kModes; ++k)
      if (x.cos[k] != 0.0 || x.sin[k] != 0.0) return false;
    return true;
  } else {
    for (int k = 0; k < T::kModes; ++k)
      if (!x.cos[k].zero() || !x.sin[k].zero()) return false;
    return true;
  }
}

template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r;
  r.order = a.order;
  for (int i = 0; i <= a.order; ++i) {
    if (is_zero(a.c[i])) continue;
    for (int j = 0; i + j <= a.order; ++j) {
      if (is_zero(b.c[j])) continue;
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

template <class T>
Jet<T> operator+(Jet<T> a, const Jet<T>& b) {
  for (int i = 0; i <= a.order; ++i) a.c[i] += b.c[i];
  return a;
}

template <class T>
Jet<T> operator-(Jet<T> a, const Jet<T>& b) {
  for (int i = 0; i <= a.order; ++i) a.c[i] -= b.c[i];
  return a;
}

template <class T>
Jet<T> operator*(double s, Jet<T> a) {
  for (int i = 0; i <= a.order; ++i) a.c[i] *= s;
  return a;
}

template <class T, class F>
auto map_jet(const Jet<T>& a, F&& f) {
  Jet<std::decay_t<decltype(f(a.c[0]))>> r;
  r.order = a.order;
  for (int i = 0; i <= a.order; ++i) r.c[i] = f(a.c[i]);
  return r;
}

template <class T>
Jet<T> constant_jet(int order, const T& value) {
  Jet<T> r;
  r.order = order;
  r.c[0] = value;
  return r;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TrigField trivial_field(double gamma) {
  TrigField H;
  H.cos[0] = ExpPoly::term(0, 1, std::exp(gamma)) - ExpPoly(1.0);
  return H;
}

TrigField null_field(double gamma) {
  TrigField v;
  const double s = 1.0 / c_hat(gamma);
  v.cos[1] = ExpPoly::term(0, 2, s) - ExpPoly::term(0, 0, s * std::exp(-2.0 * gamma));
  return v;
}

Derivative residual_derivative(const ModelParams& params, double alpha, const TrigField& d,
                               int order) {
  if (order < 1 || order > 3) throw DomainError("derivative order must be 1, 2 or 3");
  const double g = params.gamma;
  const double P = params.p0sq;
  const double lam = lambda_of(params, alpha);

  Jet<TrigField> h;
  h.order = order;
  h.c[0] = trivial_field(g);
  h.c[1] = d;
  TrigField one;
  one.cos[0] = ExpPoly(1.0);

  const auto u = h + constant_jet(order, one);
  const auto hq = map_jet(h, [](const TrigField& f) { return f.dq(); });
  const auto hqq = map_jet(hq, [](const TrigField& f) { return f.dq(); });
  const auto hp = map_jet(h, [g](const TrigField& f) { return dp(f, g); });
  const auto hpp = map_jet(hp, [g](const TrigField& f) { return dp(f, g); });
  const auto hqp = map_jet(hq, [g](const TrigField& f) { return dp(f, g); });

  const auto hp2 = hp * hp;
  const auto g1 = hqq * hp2 - 2.0 * (hq * hp * hqp) + hpp * (hq * hq) - u * hp2 + (u * u) * hpp;

  auto top = [](const Jet<TrigField>& j) {
    return map_jet(j, [](const TrigField& f) { return trace_top(f); });
  };
  const auto ut = top(u), hpt = top(hp), hqt = top(hq);
  TrigTrace two_lam;
  two_lam.cos[0] = 2.0 * lam;
  const auto u2 = ut * ut;
  const auto bracket = constant_jet(order, two_lam) + u2 - (2.0 * alpha) * ut;
  const auto g2 = u2 * (hpt * hpt) * bracket - P * (hqt * hqt) - P * u2;

  const double f = factorial(order);
  Derivative out;
  out.interior = g1.c[order] * f;
  out.top = g2.c[order] * f;
  return out;
}

double orthogonality(const ModelParams& params, const TrigField& u, const TrigTrace& b) {
  const double g = params.gamma;
  const double X = std::exp(g);
  // E^{-4} h* with E = X e^{g p}
  const ExpPoly weight = ExpPoly::term(0, -2, std::pow(X, -4.0)) -
                         ExpPoly::term(0, -4, std::pow(X, -6.0));
  const double interior = kPi * (u.cos[1] * weight).integral(g);
  const double hs_top = -std::expm1(-2.0 * g);
  const double boundary = 0.5 * kPi * std::pow(X, -3.0) * g * hs_top / params.p0sq * b.cos[1];
  return interior - boundary;
}

namespace {

// Mode k of the solution of F_f z = (r, b) with z(-1) = 0:
// Y = z / E solves Y'' - (k g)^2 Y = r E^{-3}.
ExpPoly solve_mode(const ModelParams& params, double beta_c, int k, const ExpPoly& r, double b) {
  const double g = params.gamma, P = params.p0sq;
  const double X = std::exp(g);
  const ExpPoly f = r * ExpPoly::term(0, -3, std::pow(X, -3.0));
  const ExpPoly yp = solve_helmholtz_particular(f, k, g);
  const ExpPoly phi1 = k == 0 ? ExpPoly(1.0) : ExpPoly::term(0, k, 1.0);
  const ExpPoly phi2 = k == 0 ? ExpPoly::term(1, 0, 1.0) : ExpPoly::term(0, -k, 1.0);

  auto bed = [g](const ExpPoly& y) { return y.eval(g, -1.0); };
  auto topbc = [&](const ExpPoly& y) {
    const double y0 = y.eval(g, 0.0), y1 = y.dp(g).eval(g, 0.0);
    return 2.0 * X * X * ((P / g) * (y1 + g * y0) - beta_c * y0);
  };
  const double a11 = bed(phi1), a12 = bed(phi2), a21 = topbc(phi1), a22 = topbc(phi2);
  const double r1 = -bed(yp), r2 = b - topbc(yp);
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0) throw NumericalError("singular mode problem in the reduction");
  const double A = (r1 * a22 - a12 * r2) / det;
  const double B = (a11 * r2 - a21 * r1) / det;
  const ExpPoly Y = yp + A * phi1 + B * phi2;
  return ExpPoly::term(0, 1, X) * Y;
}

}  // namespace

Reduction reduce(const ModelParams& params) {
  const double g = params.gamma, P = params.p0sq;
  if (!(P > 0.0)) throw DomainError("reduction requires p0sq > 0");
  const double ac = alpha_c(params);
  const double bc = beta(params, ac);
  const TrigField v = null_field(g);

  const auto f2 = residual_derivative(params, ac, v, 2);
  TrigField z;
  for (int k = 0; k < TrigField::kModes; ++k) {
    if (k == 1) continue;  // no cos q content in F_ff[v,v]
    if (f2.interior.cos[k].zero() && f2.top.cos[k] == 0.0) continue;
    z.cos[k] = solve_mode(params, bc, k, f2.interior.cos[k], f2.top.cos[k]);
  }

  const auto plus = residual_derivative(params, ac, v + z, 2);
  const auto minus = residual_derivative(params, ac, v - z, 2);
  const TrigField fvz = 0.25 * (plus.interior - minus.interior);
  const TrigTrace fvz_top = 0.25 * (plus.top - minus.top);
  const auto f3 = residual_derivative(params, ac, v, 3);

  TrigTrace fav;  // F_alpha f v = (0, -2 g^2 e^{4g} v|_T)
  fav.cos[1] = -2.0 * g * g * std::exp(4.0 * g) * (-std::expm1(-2.0 * g)) / c_hat(g);
  const double den = orthogonality(params, TrigField{}, fav);

  Reduction out;
  out.transversality = den;
  out.o2 = orthogonality(params, fvz, fvz_top) / den;
  out.o1 = -orthogonality(params, f3.interior, f3.top) / (3.0 * den);
  out.total = orthogonality(params, fvz - (1.0 / 3.0) * f3.interior,
                            fvz_top - (1.0 / 3.0) * f3.top) /
              den;
  out.z = std::move(z);
  return out;
}

}  // namespace vortwave::detail
