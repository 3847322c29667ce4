// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic on finite sums  sum c * p^m * e^{n gamma p} * {cos,sin}(k q)
// with integer m >= 0, n and k.  Every field arising in the reduction at the
// trivial solution has this form, so derivatives, products, mode solves and
// integrals over [-1, 0] are all closed-form.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace vortwave::detail {

struct ExpTerm {
  int m;     // power of p
  int n;     // exponent multiple of gamma
  double c;  // coefficient
};

class ExpPoly {
 public:
  ExpPoly() = default;
  explicit ExpPoly(double constant) {
    if (constant != 0.0) terms_.push_back({0, 0, constant});
  }
  static ExpPoly term(int m, int n, double c) {
    ExpPoly e;
    if (c != 0.0) e.terms_.push_back({m, n, c});
    return e;
  }

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  ExpPoly& operator*=(double s);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(ExpPoly a, double s) { return a *= s; }
  friend ExpPoly operator*(double s, ExpPoly a) { return a *= s; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);

  ExpPoly dp(double gamma) const;
  double eval(double gamma, double p) const;
  // Integral over p in [-1, 0].
  double integral(double gamma) const;

 private:
  void normalize();
  std::vector<ExpTerm> terms_;
};

// Particular solution Y of Y'' - (k gamma)^2 Y = f.
ExpPoly solve_helmholtz_particular(const ExpPoly& f, int k, double gamma);

// Trigonometric polynomial in q with coefficients C; index is the wavenumber.
template <class C>
struct Trig {
  static constexpr int kModes = 8;
  std::array<C, kModes> cos{};
  std::array<C, kModes> sin{};  // sin[0] is unused

  Trig() {
    cos.fill(C(0.0));
    sin.fill(C(0.0));
  }

  Trig& operator+=(const Trig& o) {
    for (int k = 0; k < kModes; ++k) {
      cos[k] += o.cos[k];
      sin[k] += o.sin[k];
    }
    return *this;
  }
  Trig& operator-=(const Trig& o) {
    for (int k = 0; k < kModes; ++k) {
      cos[k] -= o.cos[k];
      sin[k] -= o.sin[k];
    }
    return *this;
  }
  Trig& operator*=(double s) {
    for (int k = 0; k < kModes; ++k) {
      cos[k] *= s;
      sin[k] *= s;
    }
    return *this;
  }
  friend Trig operator+(Trig a, const Trig& b) { return a += b; }
  friend Trig operator-(Trig a, const Trig& b) { return a -= b; }
  friend Trig operator*(Trig a, double s) { return a *= s; }
  friend Trig operator*(double s, Trig a) { return a *= s; }
  friend Trig operator*(const Trig& a, const Trig& b) {
    Trig r;
    for (int i = 0; i < kModes; ++i) {
      const bool ac = !is_zero(a.cos[i]), as = i > 0 && !is_zero(a.sin[i]);
      if (!ac && !as) continue;
      for (int j = 0; j < kModes; ++j) {
        const bool bc = !is_zero(b.cos[j]), bs = j > 0 && !is_zero(b.sin[j]);
        if (!bc && !bs) continue;
        const int sum = i + j, dif = i > j ? i - j : j - i;
        const int sgn = i >= j ? 1 : -1;  // sin(i - j) = sgn * sin|i - j|
        if (ac && bc) {
          C t = a.cos[i] * b.cos[j];
          t *= 0.5;
          add_cos(r, sum, t);
          add_cos(r, dif, t);
        }
        if (as && bs) {
          C t = a.sin[i] * b.sin[j];
          t *= 0.5;
          add_cos(r, dif, t);
          C u = t;
          u *= -1.0;
          add_cos(r, sum, u);
        }
        if (as && bc) {  // sin i cos j = (sin(i+j) + sin(i-j)) / 2
          C t = a.sin[i] * b.cos[j];
          t *= 0.5;
          add_sin(r, sum, t);
          C u = t;
          u *= static_cast<double>(sgn);
          add_sin(r, dif, u);
        }
        if (ac && bs) {  // cos i sin j = (sin(i+j) - sin(i-j)) / 2
          C t = a.cos[i] * b.sin[j];
          t *= 0.5;
          add_sin(r, sum, t);
          C u = t;
          u *= static_cast<double>(-sgn);
          add_sin(r, dif, u);
        }
      }
    }
    return r;
  }

  Trig dq() const {
    Trig r;
    for (int k = 1; k < kModes; ++k) {
      r.cos[k] = sin[k] * static_cast<double>(k);
      r.sin[k] = cos[k] * static_cast<double>(-k);
    }
    return r;
  }

 private:
  static bool is_zero(const C& c) {
    if constexpr (std::is_same_v<C, double>) {
      return c == 0.0;
    } else {
      return c.zero();
    }
  }
  static void add_cos(Trig& r, int k, const C& t);
  static void add_sin(Trig& r, int k, const C& t);
};

template <class C>
void Trig<C>::add_cos(Trig& r, int k, const C& t) {
  if (k >= kModes) throw std::out_of_range("Trig: wavenumber overflow");
  r.cos[k] += t;
}

template <class C>
void Trig<C>::add_sin(Trig& r, int k, const C& t) {
  if (k == 0) return;
  if (k >= kModes) throw std::out_of_range("Trig: wavenumber overflow");
  r.sin[k] += t;
}

using TrigField = Trig<ExpPoly>;
using TrigTrace = Trig<double>;

TrigField dp(const TrigField& f, double gamma);
TrigTrace trace_top(const TrigField& f);

}  // namespace vortwave::detail
