// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include "vortwave/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vortwave/detail/reduction.hpp"
#include "vortwave/errors.hpp"

namespace vortwave {

namespace {

constexpr double kPi = std::numbers::pi;

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw DomainError("gamma must lie in (0, 1), got " + std::to_string(gamma));
}

void require_positive_flux(const ModelParams& p, const char* what) {
  p.validate();
  if (!(p.p0sq > 0.0)) throw DomainError(std::string(what) + " is undefined at p0sq = 0");
}

}  // namespace

void ModelParams::validate() const {
  require_gamma(gamma);
  if (!(p0sq >= 0.0)) throw DomainError("p0sq must be nonnegative");
  if (!(p0sq < p0sq_limit(gamma)))
    throw DomainError("p0sq must stay below gamma^2 e^{4 gamma}");
}

bool ModelParams::valid() const noexcept {
  return gamma > 0.0 && gamma < 1.0 && p0sq >= 0.0 && p0sq < p0sq_limit(gamma);
}

double ModelParams::p0() const noexcept { return -std::sqrt(p0sq); }

double p0sq_limit(double gamma) { return gamma * gamma * std::exp(4.0 * gamma); }

double lambda_of(const ModelParams& params, double alpha) {
  params.validate();
  const double g = params.gamma;
  const double as = alpha_s(params);
  if (alpha < as - 1e-14 * std::max(1.0, std::abs(as)))
    throw DomainError("lambda_of requires alpha >= alpha_s");
  // Written around alpha_s so that lambda(alpha_s) vanishes exactly.
  return std::exp(g) * (alpha - as);
}

double alpha_s(const ModelParams& params) {
  params.validate();
  const double g = params.gamma;
  return 0.5 * (std::exp(g) - params.p0sq / (std::exp(3.0 * g) * g * g));
}

double alpha_c(const ModelParams& params) {
  params.validate();
  const double g = params.gamma;
  return std::exp(g) + 2.0 * params.p0sq / (g * g * std::exp(g) * std::expm1(2.0 * g));
}

double beta(const ModelParams& params, double alpha) {
  params.validate();
  const double g = params.gamma;
  return g * g * std::exp(3.0 * g) * (alpha - std::exp(g));
}

double c_hat(double gamma) {
  require_gamma(gamma);
  const double g = gamma;
  // 1/(4g) + (3+4g)/(4g e^{4g}) - 1/(g e^{2g}) with the leading cancellation
  // carried by expm1.
  const double inner =
      std::exp(-4.0 * g) * (std::expm1(4.0 * g) - 4.0 * std::expm1(2.0 * g) + 4.0 * g) / (4.0 * g);
  return std::sqrt(kPi * inner);
}

double c_zero(const ModelParams& params) {
  require_positive_flux(params, "C0");
  const double g = params.gamma;
  const double em = std::expm1(2.0 * g);
  const double a = std::exp(-3.0 * g) - std::exp(-5.0 * g);
  const double inner = std::exp(-12.0 * g) * em * em * em * (em + 4.0) / (24.0 * g) +
                       g * g * a * a / (4.0 * params.p0sq * params.p0sq);
  return std::sqrt(kPi * inner);
}

CriticalPair solve_critical_pair(double gamma, double lambda) {
  require_gamma(gamma);
  const double g = gamma;
  const double e2 = std::exp(2.0 * g);
  double p0sq = g * g * e2 * (2.0 * lambda - e2) * std::expm1(2.0 * g) / (5.0 * e2 - 1.0);
  // lambda = e^{2 gamma}/2 given in decimal lands within rounding of zero
  if (p0sq < 0.0 && p0sq > -1e-13 * p0sq_limit(g)) p0sq = 0.0;
  if (!(p0sq >= 0.0) || !(p0sq < p0sq_limit(g)))
    throw InfeasibleError("critical p0sq = " + std::to_string(p0sq) + " is outside [0, " +
                          std::to_string(p0sq_limit(g)) + ")");
  return {alpha_c(ModelParams{g, p0sq}), p0sq};
}

ZCoeffs z_coeffs(const ModelParams& params) {
  params.validate();
  const double g = params.gamma, P = params.p0sq;
  const double em = std::expm1(2.0 * g);
  const double common = g * g * em * em;
  const double e2 = std::exp(-2.0 * g), e4 = std::exp(-4.0 * g);
  return {common - P * e4 + 2.0 * P * e2 - 13.0 * P,
          common + P * e4 - 2.0 * P * e2 - 11.0 * P};
}

double o1(const ModelParams& params) {
  require_positive_flux(params, "o1");
  const double g = params.gamma, P = params.p0sq;
  const double em = std::expm1(2.0 * g);
  const double r = P / (g * g);
  const double bracket = 4.5 * std::exp(3.0 * g) - 15.0 * std::exp(g) -
                         4.0 * r * std::exp(-7.0 * g) +
                         std::exp(-5.0 * g) * (1.5 - 12.0 * r - 8.0 * P / g) +
                         std::exp(-3.0 * g) * (44.0 * r - 9.0) + std::exp(-g) * (18.0 - 28.0 * r);
  const double ch = c_hat(g);
  return bracket / (ch * ch * em * em);
}

double o2(const ModelParams& params) {
  require_positive_flux(params, "o2");
  return detail::reduce(params).o2;
}

double o_total(const ModelParams& params) {
  require_positive_flux(params, "o_total");
  return detail::reduce(params).total;
}

namespace {

double expanded_prefactor(const ModelParams& params) {
  const double g = params.gamma;
  const double em = std::expm1(2.0 * g);
  const double ch = c_hat(g);
  return 1.0 / (36.0 * g * g * ch * ch * params.p0sq * em * em * std::exp(9.0 * g));
}

}  // namespace

double o2_free_bed(const ModelParams& params) {
  require_positive_flux(params, "o2_free_bed");
  const double g = params.gamma, P = params.p0sq, P2 = P * P;
  const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
  auto e = [g](double k) { return std::exp(k * g); };
  const double bracket =
      60.0 * P2 - 63.0 * g4 * e(16) + 18.0 * g4 * e(18) + 86.0 * P2 * e(2) +
      e(4) * (864.0 * g * P2 + 530.0 * P2 - 25.0 * g2 * P) +
      e(6) * (576.0 * g * P2 - 2230.0 * P2 + 144.0 * g3 * P + 324.0 * g2 * P) +
      e(8) * (27.0 * g4 + 576.0 * g * P2 + 114.0 * P2 - 72.0 * g3 * P - 930.0 * g2 * P) +
      e(10) * (1440.0 * P2 - 72.0 * g4 + 448.0 * g2 * P) +
      e(12) * (36.0 * g4 - 72.0 * g3 * P + 507.0 * g2 * P) + e(14) * (54.0 * g4 - 324.0 * g2 * P);
  return expanded_prefactor(params) * bracket;
}

double o_total_unscaled(const ModelParams& params) {
  require_positive_flux(params, "o_total_unscaled");
  const double g = params.gamma, P = params.p0sq, P2 = P * P;
  const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
  auto e = [g](double k) { return std::exp(k * g); };
  return 60.0 * P2 + 230.0 * P2 * e(2) + e(4) * (962.0 * P2 - 79.0 * g2 * P + 1152.0 * g * P2) +
         e(6) * (576.0 * g * P2 - 3814.0 * P2 + 144.0 * g3 * P + 648.0 * g2 * P) +
         e(8) * (27.0 * g4 + 576.0 * g * P2 + 1122.0 * P2 - 72.0 * g3 * P - 1578.0 * g2 * P) +
         e(10) * (1440.0 * P2 - 72.0 * g4 + 988.0 * g2 * P) +
         e(14) * (54.0 * g4 - 324.0 * g2 * P) +
         e(12) * (36.0 * g4 - 72.0 * g3 * P + 345.0 * g2 * P) - 63.0 * g4 * e(16) +
         18.0 * g4 * e(18);
}

double o_total_expanded(const ModelParams& params) {
  return expanded_prefactor(params) * o_total_unscaled(params);
}

ClosedForms closed_forms(const ModelParams& params) {
  require_positive_flux(params, "closed_forms");
  const auto z = z_coeffs(params);
  const auto red = detail::reduce(params);
  return {alpha_s(params), alpha_c(params), c_hat(params.gamma), c_zero(params),
          z.z1,            z.z2,            o1(params),          red.o2,
          red.total};
}

BifurcationClass classify_value(double o, double tol) {
  if (o > tol) return BifurcationClass::Supercritical;
  if (o < -tol) return BifurcationClass::Subcritical;
  return BifurcationClass::Degenerate;
}

BifurcationClass classify(const ModelParams& params, double tol) {
  return classify_value(o_total(params), tol);
}

std::string_view to_string(BifurcationClass c) {
  switch (c) {
    case BifurcationClass::Supercritical: return "supercritical";
    case BifurcationClass::Subcritical: return "subcritical";
    case BifurcationClass::Degenerate: return "degenerate";
  }
  return "degenerate";
}

BifurcationClass class_from_string(std::string_view s) {
  if (s == "supercritical") return BifurcationClass::Supercritical;
  if (s == "subcritical") return BifurcationClass::Subcritical;
  if (s == "degenerate") return BifurcationClass::Degenerate;
  throw DomainError("unknown bifurcation class '" + std::string(s) + "'");
}

double trivial_H(double gamma, double p) { return std::expm1(gamma * (p + 1.0)); }

double null_mode(double gamma, double q, double p) {
  return (std::exp(2.0 * gamma * p) - std::exp(-2.0 * gamma)) * std::cos(q);
}

double particular_solution(const ModelParams& params, double q, double p) {
  require_positive_flux(params, "particular_solution");
  const double g = params.gamma, P = params.p0sq;
  const double g2 = g * g, g3 = g2 * g;
  auto e = [g](double x) { return std::exp(g * x); };
  const double c2q = std::cos(2.0 * q);
  const double h1 = -1.5 * e(3.0 * p - 1.0) + 0.5 * e(-(p + 5.0)) + e(p - 3.0) * c2q;
  const double h2 =
      4.0 * g * p * e(p - 3.0) - 4.0 * e(p - 3.0) + 4.0 * g * p * e(p - 1.0) + e(p - 1.0) +
      4.0 * g * p * e(p + 1.0) + 4.0 * e(p + 1.0) + g3 * p * e(p - 1.0) / P -
      g3 * p * e(p + 1.0) / (2.0 * P) - g3 * p * e(p + 5.0) / (2.0 * P) -
      g2 * e(p - 1.0) / (2.0 * P) + g2 * e(p + 1.0) / (2.0 * P) + g2 * e(p + 3.0) / (2.0 * P) -
      g2 * e(p + 5.0) / (2.0 * P) +
      (11.0 / 6.0 * e(-(p + 1.0)) - 11.0 / 9.0 * e(-(p + 3.0)) - 4.0 / 3.0 * e(-(p + 5.0)) -
       5.0 / 18.0 * e(3.0 * p - 5.0) - g2 * e(-(p + 1.0)) / (2.0 * P) +
       g2 * e(3.0 * (p + 1.0)) / (2.0 * P)) *
          c2q;
  const double ch = c_hat(g);
  return (h1 + h2) / (ch * ch);
}

double second_order_interior_rhs(double gamma, double q, double p) {
  const double g = gamma;
  const double ch = c_hat(g);
  return 2.0 * g * g * std::exp((p - 3.0) * g) *
         (1.0 - 2.0 * std::exp(2.0 * (p + 1.0) * g) * std::cos(2.0 * q) -
          3.0 * std::exp(4.0 * (p + 1.0) * g)) /
         (ch * ch);
}

double second_order_top_rhs(const ModelParams& params, double q) {
  const auto z = z_coeffs(params);
  const double ch = c_hat(params.gamma);
  return (z.z1 + z.z2 * std::cos(2.0 * q)) / (ch * ch);
}

}  // namespace vortwave
