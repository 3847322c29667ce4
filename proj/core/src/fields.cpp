// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include "vortwave/fields.hpp"

#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <ostream>

#include "vortwave/errors.hpp"

namespace vortwave {

namespace {

constexpr double kPi = std::numbers::pi;

// Chebyshev-Lobatto differentiation of orders 1 and 2 on x_j = cos(pi j / N),
// following the trigonometric-identity and flipping construction of chebdif.
void chebyshev_matrices(int N, Eigen::MatrixXd& D1, Eigen::MatrixXd& D2) {
  const int n = N + 1;
  Eigen::MatrixXd DX(n, n), C(n, n), Z(n, n);
  const int n1 = n / 2, n2 = (n + 1) / 2;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      DX(k, j) = 2.0 * std::sin(kPi * (k + j) / (2.0 * N)) * std::sin(kPi * (j - k) / (2.0 * N));
  // flipping: enforce antisymmetry about the anti-diagonal
  for (int k = n1; k < n; ++k)
    for (int j = 0; j < n; ++j) DX(k, j) = -DX(n - 1 - k, n - 1 - j);
  (void)n2;
  for (int k = 0; k < n; ++k) DX(k, k) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Ones(n);
  c(0) = c(n - 1) = 2.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      C(k, j) = ((k + j) % 2 == 0 ? 1.0 : -1.0) * c(k) / c(j);
      Z(k, j) = k == j ? 0.0 : 1.0 / DX(k, j);
    }
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(n, n);
  for (int ell = 1; ell <= 2; ++ell) {
    Eigen::VectorXd dg = D.diagonal();
    Eigen::MatrixXd Dn(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) Dn(k, j) = ell * Z(k, j) * (C(k, j) * dg(k) - D(k, j));
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += Dn(k, j);
      Dn(k, k) = -s;
    }
    D = Dn;
    if (ell == 1) D1 = D;
  }
  D2 = D;
}

Eigen::VectorXd clenshaw_curtis(int N) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(N + 1);
  const double Nd = N;
  if (N % 2 == 0) {
    w(0) = w(N) = 1.0 / (Nd * Nd - 1.0);
  } else {
    w(0) = w(N) = 1.0 / (Nd * Nd);
  }
  for (int i = 1; i < N; ++i) {
    const double th = kPi * i / Nd;
    double v = 1.0;
    if (N % 2 == 0) {
      for (int k = 1; k < N / 2; ++k) v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
      v -= std::cos(Nd * th) / (Nd * Nd - 1.0);
    } else {
      for (int k = 1; k <= (N - 1) / 2; ++k)
        v -= 2.0 * std::cos(2.0 * k * th) / (4.0 * k * k - 1.0);
    }
    w(i) = 2.0 * v / Nd;
  }
  return w;
}

void require_same_grid(const Field2D& a, const Field2D& b) {
  if (!a.grid() || !b.grid() || !(*a.grid() == *b.grid()))
    throw DomainError("fields live on different grids");
}

Field2D checked(Field2D f) {
  if (!f.finite()) throw NumericalError("non-finite values in field");
  return f;
}

Parity flip(Parity p) {
  switch (p) {
    case Parity::Even: return Parity::Odd;
    case Parity::Odd: return Parity::Even;
    default: return Parity::None;
  }
}

}  // namespace

Grid::Grid(int nq, int np) : nq_(nq), np_(np) {
  if (nq <= 0 || nq % 2 != 0) throw DomainError("nq must be positive and even");
  if (np < 4) throw DomainError("np must be at least 4");
  const int N = np - 1;
  wq_ = 2.0 * kPi / nq;
  q_.resize(nq);
  for (int i = 0; i < nq; ++i) q_(i) = wq_ * i;

  p_.resize(np);
  for (int j = 0; j < np; ++j) {
    // x_j = cos(pi j / N) written as sin for symmetric rounding
    const double x = std::sin(kPi * (N - 2.0 * j) / (2.0 * N));
    p_(j) = 0.5 * (x - 1.0);
  }
  p_(0) = 0.0;
  p_(N) = -1.0;

  Eigen::MatrixXd D1, D2;
  chebyshev_matrices(N, D1, D2);
  Dp_ = 2.0 * D1;
  Dpp_ = 4.0 * D2;
  wp_ = 0.5 * clenshaw_curtis(N);
  bary_.resize(np);
  for (int j = 0; j < np; ++j) bary_(j) = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == N) ? 0.5 : 1.0);

  Dq_.resize(nq, nq);
  Dqq_.resize(nq, nq);
  const double h = wq_;
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j) {
      if (i == j) {
        Dq_(i, j) = 0.0;
        Dqq_(i, j) = -kPi * kPi / (3.0 * h * h) - 1.0 / 6.0;
      } else {
        const double s = ((i - j) % 2 == 0) ? 1.0 : -1.0;
        const double t = 0.5 * (i - j) * h;
        Dq_(i, j) = 0.5 * s / std::tan(t);
        Dqq_(i, j) = -0.5 * s / (std::sin(t) * std::sin(t));
      }
    }
}

double Grid::interp_p(const Eigen::Ref<const Eigen::VectorXd>& column, double p) const {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < np_; ++j) {
    const double d = p - p_(j);
    if (d == 0.0) return column(j);
    const double w = bary_(j) / d;
    num += w * column(j);
    den += w;
  }
  return num / den;
}

double Grid::integrate_p(const Eigen::Ref<const Eigen::VectorXd>& column) const {
  return wp_.dot(column);
}

GridPtr make_grid(int nq, int np) { return std::make_shared<const Grid>(nq, np); }

Field2D::Field2D(GridPtr grid, Eigen::MatrixXd values, Parity parity)
    : grid_(std::move(grid)), v_(std::move(values)), parity_(parity) {
  if (!grid_) throw DomainError("field without grid");
  if (v_.rows() != grid_->nq() || v_.cols() != grid_->np())
    throw DomainError("field shape does not match grid");
}

Field2D Field2D::zeros(GridPtr grid, Parity parity) {
  const int nq = grid->nq(), np = grid->np();
  return Field2D(std::move(grid), Eigen::MatrixXd::Zero(nq, np), parity);
}

Field2D Field2D::from_function(GridPtr grid, const std::function<double(double, double)>& f,
                               Parity parity) {
  Eigen::MatrixXd v(grid->nq(), grid->np());
  for (int i = 0; i < grid->nq(); ++i)
    for (int j = 0; j < grid->np(); ++j) v(i, j) = f(grid->q()(i), grid->p()(j));
  return checked(Field2D(std::move(grid), std::move(v), parity));
}

Field2D& Field2D::operator+=(const Field2D& o) {
  require_same_grid(*this, o);
  v_ += o.v_;
  if (parity_ != o.parity_) parity_ = Parity::None;
  return *this;
}

Field2D& Field2D::operator-=(const Field2D& o) {
  require_same_grid(*this, o);
  v_ -= o.v_;
  if (parity_ != o.parity_) parity_ = Parity::None;
  return *this;
}

Field2D& Field2D::operator*=(double s) {
  v_ *= s;
  return *this;
}

Field2D d_q(const Field2D& f) {
  return checked(Field2D(f.grid(), f.grid()->Dq() * f.values(), flip(f.parity())));
}

Field2D d_qq(const Field2D& f) {
  return checked(Field2D(f.grid(), f.grid()->Dqq() * f.values(), f.parity()));
}

Field2D d_p(const Field2D& f) {
  return checked(Field2D(f.grid(), f.values() * f.grid()->Dp().transpose(), f.parity()));
}

Field2D d_pp(const Field2D& f) {
  return checked(Field2D(f.grid(), f.values() * f.grid()->Dpp().transpose(), f.parity()));
}

Field2D d_qp(const Field2D& f) {
  const auto& g = *f.grid();
  return checked(
      Field2D(f.grid(), g.Dq() * f.values() * g.Dp().transpose(), flip(f.parity())));
}

Eigen::VectorXd trace_top(const Field2D& f) { return f.values().col(f.grid()->top()); }
Eigen::VectorXd trace_bed(const Field2D& f) { return f.values().col(f.grid()->bed()); }

double integrate(const Field2D& f) {
  const auto& g = *f.grid();
  return g.wq() * (f.values() * g.wp()).sum();
}

double integrate_top(const Grid& g, const Eigen::Ref<const Eigen::VectorXd>& samples) {
  return g.wq() * samples.sum();
}

Field2D project_even(const Field2D& f) {
  const int nq = f.grid()->nq();
  Eigen::MatrixXd v = f.values();
  for (int i = 1; i < nq / 2; ++i) {
    const Eigen::VectorXd avg = 0.5 * (f.values().row(i) + f.values().row(nq - i)).transpose();
    v.row(i) = avg.transpose();
    v.row(nq - i) = avg.transpose();
  }
  return Field2D(f.grid(), std::move(v), Parity::Even);
}

double even_defect(const Field2D& f) {
  const int nq = f.grid()->nq();
  double d = 0.0;
  for (int i = 1; i < nq / 2; ++i)
    d = std::max(d, (f.values().row(i) - f.values().row(nq - i)).cwiseAbs().maxCoeff());
  return d;
}

double top_cos_coefficient(const Field2D& f, int k) {
  const auto& g = *f.grid();
  const Eigen::VectorXd t = trace_top(f);
  double s = 0.0;
  for (int i = 0; i < g.nq(); ++i) s += t(i) * std::cos(k * g.q()(i));
  return (k == 0 ? 1.0 : 2.0) * s / g.nq();
}

void write_csv(std::ostream& os, const Field2D& f) {
  const auto& g = *f.grid();
  os << "q,p,value\n" << std::setprecision(17);
  for (int i = 0; i < g.nq(); ++i)
    for (int j = 0; j < g.np(); ++j) os << g.q()(i) << ',' << g.p()(j) << ',' << f(i, j) << '\n';
}

namespace {

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    default: return "none";
  }
}

Parity parity_from(const std::string& s) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  if (s == "none") return Parity::None;
  throw IoError("unknown parity '" + s + "'");
}

}  // namespace

std::string to_json(const Field2D& f) {
  const auto& g = *f.grid();
  nlohmann::json j;
  j["nq"] = g.nq();
  j["np"] = g.np();
  j["parity"] = parity_name(f.parity());
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < g.nq(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int c = 0; c < g.np(); ++c) r.push_back(f(i, c));
    rows.push_back(std::move(r));
  }
  j["values"] = std::move(rows);
  return j.dump();
}

Field2D field_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("field JSON: ") + e.what());
  }
  const int nq = j.at("nq").get<int>(), np = j.at("np").get<int>();
  auto grid = make_grid(nq, np);
  Eigen::MatrixXd v(nq, np);
  const auto& rows = j.at("values");
  if (static_cast<int>(rows.size()) != nq) throw IoError("field JSON: row count mismatch");
  for (int i = 0; i < nq; ++i) {
    if (static_cast<int>(rows[i].size()) != np) throw IoError("field JSON: column count mismatch");
    for (int c = 0; c < np; ++c) v(i, c) = rows[i][c].get<double>();
  }
  return Field2D(std::move(grid), std::move(v), parity_from(j.at("parity").get<std::string>()));
}

}  // namespace vortwave
