// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Tensor grid on the periodic channel [0, 2pi) x [-1, 0]: uniform Fourier
// nodes in q, Chebyshev-Lobatto nodes in p (index 0 is the top p = 0, the last
// index is the bed p = -1).
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

namespace vortwave {

class Grid {
 public:
  Grid(int nq, int np);

  int nq() const { return nq_; }
  int np() const { return np_; }
  int size() const { return nq_ * np_; }
  int top() const { return 0; }
  int bed() const { return np_ - 1; }

  const Eigen::VectorXd& q() const { return q_; }
  const Eigen::VectorXd& p() const { return p_; }
  double wq() const { return wq_; }
  const Eigen::VectorXd& wp() const { return wp_; }

  // Differentiation matrices acting on a column (p) or a row (q) of samples.
  const Eigen::MatrixXd& Dq() const { return Dq_; }
  const Eigen::MatrixXd& Dqq() const { return Dqq_; }
  const Eigen::MatrixXd& Dp() const { return Dp_; }
  const Eigen::MatrixXd& Dpp() const { return Dpp_; }

  // Barycentric interpolation of nodal values in p.
  double interp_p(const Eigen::Ref<const Eigen::VectorXd>& column, double p) const;
  // Quadrature over [-1, 0] of nodal values.
  double integrate_p(const Eigen::Ref<const Eigen::VectorXd>& column) const;

  bool operator==(const Grid& o) const { return nq_ == o.nq_ && np_ == o.np_; }

 private:
  int nq_, np_;
  Eigen::VectorXd q_, p_, wp_, bary_;
  double wq_;
  Eigen::MatrixXd Dq_, Dqq_, Dp_, Dpp_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Throws DomainError unless nq is even and positive and np >= 4.
GridPtr make_grid(int nq, int np);

enum class Parity { None, Even, Odd };

class Field2D {
 public:
  Field2D() = default;
  Field2D(GridPtr grid, Eigen::MatrixXd values, Parity parity = Parity::None);
  static Field2D zeros(GridPtr grid, Parity parity = Parity::Even);
  static Field2D from_function(GridPtr grid, const std::function<double(double, double)>& f,
                               Parity parity = Parity::None);

  const GridPtr& grid() const { return grid_; }
  // nq x np; row i is q_i, column j is p_j.
  const Eigen::MatrixXd& values() const { return v_; }
  Eigen::MatrixXd& values() { return v_; }
  Parity parity() const { return parity_; }
  void set_parity(Parity p) { parity_ = p; }

  double operator()(int i, int j) const { return v_(i, j); }
  double& operator()(int i, int j) { return v_(i, j); }

  double max_abs() const { return v_.cwiseAbs().maxCoeff(); }
  bool finite() const { return v_.allFinite(); }

  Field2D& operator+=(const Field2D& o);
  Field2D& operator-=(const Field2D& o);
  Field2D& operator*=(double s);
  friend Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
  friend Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
  friend Field2D operator*(Field2D a, double s) { return a *= s; }
  friend Field2D operator*(double s, Field2D a) { return a *= s; }

 private:
  GridPtr grid_;
  Eigen::MatrixXd v_;
  Parity parity_ = Parity::None;
};

Field2D d_q(const Field2D& f);
Field2D d_qq(const Field2D& f);
Field2D d_p(const Field2D& f);
Field2D d_pp(const Field2D& f);
Field2D d_qp(const Field2D& f);

Eigen::VectorXd trace_top(const Field2D& f);
Eigen::VectorXd trace_bed(const Field2D& f);

// Integral over the channel, dq dp.
double integrate(const Field2D& f);
// Integral over the top boundary of nodal samples, dq.
double integrate_top(const Grid& g, const Eigen::Ref<const Eigen::VectorXd>& samples);

// Symmetrization f(q) <- (f(q) + f(2pi - q)) / 2.  Idempotent.
Field2D project_even(const Field2D& f);
// max |f(q) - f(2pi - q)|
double even_defect(const Field2D& f);
// Coefficient of cos(k q) in the top trace.
double top_cos_coefficient(const Field2D& f, int k);

// Serialization: CSV rows (q, p, value); JSON with grid metadata.
void write_csv(std::ostream& os, const Field2D& f);
std::string to_json(const Field2D& f);
Field2D field_from_json(const std::string& text);

}  // namespace vortwave
