// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form quantities of the annular constant-vorticity wave problem in
// the (gamma, p0sq) parameterization, and the pitchfork classification.
#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace vortwave {

struct ModelParams {
  double gamma = 0.0;
  double p0sq = 0.0;

  // Throws DomainError unless 0 < gamma < 1 and 0 <= p0sq < gamma^2 e^{4 gamma}.
  void validate() const;
  bool valid() const noexcept;
  // Relative mass flux; negative by convention.
  double p0() const noexcept;
};

// gamma^2 e^{4 gamma}, the upper end of the admissible p0sq range.
double p0sq_limit(double gamma);

double lambda_of(const ModelParams& params, double alpha);
double alpha_s(const ModelParams& params);
double alpha_c(const ModelParams& params);
double beta(const ModelParams& params, double alpha);
double c_hat(double gamma);
double c_zero(const ModelParams& params);

struct CriticalPair {
  double alpha_c;
  double p0sq;
};

// Solves the two critical relations at alpha = alpha_c for given lambda.
// Throws InfeasibleError when p0sq < 0 or p0sq >= gamma^2 e^{4 gamma}.
CriticalPair solve_critical_pair(double gamma, double lambda);

struct ZCoeffs {
  double z1;
  double z2;
};
ZCoeffs z_coeffs(const ModelParams& params);

// Pitchfork coefficient alpha''(0) of the bifurcating branch, split into the
// cubic part o1 and the part o2 fed by the second-order correction.
double o1(const ModelParams& params);
double o2(const ModelParams& params);
double o_total(const ModelParams& params);

// Reference values from the long expanded expressions.  o2_free_bed uses a
// second-order correction that does not vanish on the bed; o_total_expanded
// is the full expanded product and o_total_unscaled its bracket alone.
double o2_free_bed(const ModelParams& params);
double o_total_expanded(const ModelParams& params);
double o_total_unscaled(const ModelParams& params);

struct ClosedForms {
  double alpha_s;
  double alpha_c;
  double c_hat;
  double c_zero;
  double z1;
  double z2;
  double o1;
  double o2;
  double o_total;
};
ClosedForms closed_forms(const ModelParams& params);

enum class BifurcationClass { Supercritical, Subcritical, Degenerate };

inline constexpr double kDefaultClassifyTol = 1e-9;

BifurcationClass classify_value(double o, double tol = kDefaultClassifyTol);
BifurcationClass classify(const ModelParams& params, double tol = kDefaultClassifyTol);
std::string_view to_string(BifurcationClass c);
BifurcationClass class_from_string(std::string_view s);

// Trivial solution H(p) = e^{gamma (p+1)} - 1.
double trivial_H(double gamma, double p);
// Kernel element (e^{2 gamma p} - e^{-2 gamma}) cos q.
double null_mode(double gamma, double q, double p);
// Explicit solution h = (h1 + h2) / C_hat^2 of the interior and top equations
// of the second-order problem.  It does not vanish at p = -1.
double particular_solution(const ModelParams& params, double q, double p);

// Right-hand sides of the second-order problem F_f h = F_ff[h*, h*] with
// h* normalized by C_hat.
double second_order_interior_rhs(double gamma, double q, double p);
double second_order_top_rhs(const ModelParams& params, double q);

}  // namespace vortwave
