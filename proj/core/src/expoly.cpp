// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include "vortwave/detail/expoly.hpp"

#include <algorithm>
#include <map>

namespace vortwave::detail {

void ExpPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const ExpTerm& a, const ExpTerm& b) {
    return a.n != b.n ? a.n < b.n : a.m < b.m;
  });
  std::size_t w = 0;
  for (std::size_t r = 0; r < terms_.size(); ++r) {
    if (w > 0 && terms_[w - 1].n == terms_[r].n && terms_[w - 1].m == terms_[r].m) {
      terms_[w - 1].c += terms_[r].c;
    } else {
      terms_[w++] = terms_[r];
    }
  }
  terms_.resize(w);
  std::erase_if(terms_, [](const ExpTerm& t) { return t.c == 0.0; });
}

namespace {

// Merge of two normalized term lists, b scaled by sb.
std::vector<ExpTerm> merge(const std::vector<ExpTerm>& a, const std::vector<ExpTerm>& b,
                           double sb) {
  std::vector<ExpTerm> r;
  r.reserve(a.size() + b.size());
  auto less = [](const ExpTerm& x, const ExpTerm& y) {
    return x.n != y.n ? x.n < y.n : x.m < y.m;
  };
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && less(a[i], b[j]))) {
      r.push_back(a[i++]);
    } else if (i == a.size() || less(b[j], a[i])) {
      r.push_back({b[j].m, b[j].n, sb * b[j].c});
      ++j;
    } else {
      const double c = a[i].c + sb * b[j].c;
      if (c != 0.0) r.push_back({a[i].m, a[i].n, c});
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge(terms_, o.terms_, 1.0);
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, -1.0);
  return *this;
}

ExpPoly& ExpPoly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= s;
  return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.push_back({x.m + y.m, x.n + y.n, x.c * y.c});
  r.normalize();
  return r;
}

ExpPoly ExpPoly::dp(double gamma) const {
  ExpPoly r;
  for (const auto& t : terms_) {
    if (t.m > 0) r.terms_.push_back({t.m - 1, t.n, t.c * t.m});
    if (t.n != 0) r.terms_.push_back({t.m, t.n, t.c * t.n * gamma});
  }
  r.normalize();
  return r;
}

double ExpPoly::eval(double gamma, double p) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.c * std::pow(p, t.m) * std::exp(t.n * gamma * p);
  return s;
}

namespace {

// int_{-1}^{0} p^m e^{b p} dp
double moment(int m, double b) {
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  if (b == 0.0) return sign / (m + 1);
  const double eb = std::exp(-b);
  double I = -std::expm1(-b) / b;  // m = 0
  for (int j = 1; j <= m; ++j) {
    const double sj = (j % 2 == 0) ? 1.0 : -1.0;
    I = -sj * eb / b - (j / b) * I;
  }
  return I;
}

}  // namespace

double ExpPoly::integral(double gamma) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.c * moment(t.m, t.n * gamma);
  return s;
}

ExpPoly solve_helmholtz_particular(const ExpPoly& f, int k, double gamma) {
  // Group by exponent; for each group solve Q'' + 2b Q' + (b^2 - c^2) Q = P.
  std::map<int, std::vector<double>> groups;
  for (const auto& t : f.terms()) {
    auto& P = groups[t.n];
    if (static_cast<int>(P.size()) <= t.m) P.resize(t.m + 1, 0.0);
    P[t.m] += t.c;
  }
  ExpPoly y;
  for (const auto& [n, P] : groups) {
    const int M = static_cast<int>(P.size()) - 1;
    const double b = n * gamma;
    const int dsq = n * n - k * k;
    const double s = gamma * gamma * dsq;
    std::vector<double> Q(M + 3, 0.0);
    auto at = [&](int j) { return j < static_cast<int>(Q.size()) ? Q[j] : 0.0; };
    if (dsq != 0) {
      for (int j = M; j >= 0; --j)
        Q[j] = (P[j] - 2.0 * b * (j + 1) * at(j + 1) - (j + 2.0) * (j + 1.0) * at(j + 2)) / s;
    } else if (n != 0) {
      for (int j = M; j >= 0; --j)
        Q[j + 1] = (P[j] - (j + 2.0) * (j + 1.0) * at(j + 2)) / (2.0 * b * (j + 1));
    } else {
      for (int j = M; j >= 0; --j) Q[j + 2] = P[j] / ((j + 2.0) * (j + 1.0));
    }
    for (int j = 0; j < static_cast<int>(Q.size()); ++j) y += ExpPoly::term(j, n, Q[j]);
  }
  return y;
}

TrigField dp(const TrigField& f, double gamma) {
  TrigField r;
  for (int k = 0; k < TrigField::kModes; ++k) {
    r.cos[k] = f.cos[k].dp(gamma);
    r.sin[k] = f.sin[k].dp(gamma);
  }
  return r;
}

TrigTrace trace_top(const TrigField& f) {
  TrigTrace r;
  for (int k = 0; k < TrigField::kModes; ++k) {
    r.cos[k] = f.cos[k].eval(0.0, 0.0);
    r.sin[k] = f.sin[k].eval(0.0, 0.0);
  }
  return r;
}

}  // namespace vortwave::detail
