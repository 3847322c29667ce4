// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_values.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/fields.hpp"
#include "vortwave/params.hpp"

using namespace vortwave;

namespace {

const ModelParams kEx1{oracle::EX1_GAMMA, oracle::EX1_P0SQ};
const ModelParams kEx2{oracle::EX2_GAMMA, oracle::EX2_P0SQ};

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// A spread of feasible points away from the edges of the domain.
std::vector<ModelParams> samples() {
  std::vector<ModelParams> out;
  for (int i = 1; i <= 9; ++i)
    for (int j = 1; j <= 9; ++j) {
      const double g = 0.1 * i;
      out.push_back({g, p0sq_limit(g) * j / 10.0});
    }
  return out;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(kEx1.validate());
  CHECK_THROWS_AS(ModelParams({0.0, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({1.0, 0.0}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({0.5, -1e-3}).validate(), DomainError);
  CHECK_THROWS_AS(ModelParams({0.5, p0sq_limit(0.5)}).validate(), DomainError);
  CHECK(ModelParams{0.5, 0.0}.valid());
  CHECK(kEx1.p0() < 0.0);
  CHECK(kEx1.p0() * kEx1.p0() == doctest::Approx(kEx1.p0sq).epsilon(1e-15));
}

TEST_CASE("lambda at the example points") {
  CHECK(std::abs(lambda_of(kEx1, oracle::EX1_ALPHA_C) - 1.4) < 1e-12);
  CHECK(std::abs(lambda_of(kEx2, oracle::EX2_ALPHA_C) - 1.15) < 1e-12);
  CHECK(std::abs(lambda_of({0.2, 0.00594402}, 1.71615) - 1.4) < 1e-5);
  CHECK(std::abs(lambda_of({0.3, 0.00794367}, 1.50893) - 1.15) < 1e-5);
  for (const auto& p : samples()) CHECK(std::abs(lambda_of(p, alpha_s(p))) < 1e-14);
  CHECK_THROWS_AS(lambda_of(kEx1, alpha_s(kEx1) - 0.1), DomainError);
}

TEST_CASE("alpha_s and alpha_c") {
  CHECK(rel(alpha_s(kEx1), oracle::EX1_ALPHA_S) < 1e-14);
  CHECK(rel(alpha_s(kEx2), oracle::EX2_ALPHA_S) < 1e-14);
  CHECK(std::abs(alpha_s({0.4, 0.0}) - 0.5 * std::exp(0.4)) < 1e-15);
  // The upper end of p0sq sends alpha_s to zero.
  const double g = 0.35;
  const double e3 = std::exp(3.0 * g);
  CHECK(std::abs(0.5 * (std::exp(g) - p0sq_limit(g) / (e3 * g * g))) < 1e-15);

  CHECK(std::abs(alpha_c({0.2, 0.00594402}) - 1.71615) < 1e-5);
  CHECK(std::abs(alpha_c({0.3, 0.00794367}) - 1.50893) < 1e-5);
  CHECK(rel(alpha_c(kEx1), oracle::EX1_ALPHA_C) < 1e-14);
  CHECK(rel(alpha_c(kEx2), oracle::EX2_ALPHA_C) < 1e-14);
  CHECK(alpha_c({0.6, 0.0}) == doctest::Approx(std::exp(0.6)).epsilon(1e-15));
  for (const auto& p : samples()) CHECK(alpha_c(p) > alpha_s(p));
}

TEST_CASE("critical pair") {
  const CriticalPair c1 = solve_critical_pair(0.2, 1.4);
  CHECK(std::abs(c1.p0sq - 0.00594402) < 1e-6);
  CHECK(std::abs(c1.alpha_c - 1.71615) < 1e-5);
  CHECK(rel(c1.p0sq, oracle::EX1_P0SQ) < 1e-13);
  const CriticalPair c2 = solve_critical_pair(0.3, 1.15);
  CHECK(std::abs(c2.p0sq - 0.00794367) < 1e-6);
  CHECK(std::abs(c2.alpha_c - 1.50893) < 1e-5);

  const CriticalPair c0 = solve_critical_pair(0.2, 0.5 * std::exp(0.4));
  CHECK(c0.p0sq == 0.0);
  CHECK(c0.alpha_c == doctest::Approx(std::exp(0.2)).epsilon(1e-15));

  CHECK_THROWS_AS(solve_critical_pair(0.2, 0.3), InfeasibleError);
  CHECK_THROWS_AS(solve_critical_pair(0.2, 50.0), InfeasibleError);
  CHECK_THROWS_AS(solve_critical_pair(1.2, 1.0), DomainError);

  for (int i = 1; i <= 9; ++i)
    for (double l : {0.8, 1.0, 1.3, 1.7, 2.2}) {
      const double g = 0.1 * i;
      try {
        const CriticalPair cp = solve_critical_pair(g, l);
        const ModelParams p{g, cp.p0sq};
        CHECK(rel(alpha_c(p), cp.alpha_c) < 1e-12);
        CHECK(rel(lambda_of(p, cp.alpha_c), l) < 1e-12);
      } catch (const InfeasibleError&) {
      }
    }
}

TEST_CASE("beta and the determinant identity") {
  for (double g : {0.1, 0.5, 0.9}) CHECK(std::abs(beta({g, 0.0}, std::exp(g))) < 1e-15);
  CHECK(rel(beta(kEx1, oracle::EX1_ALPHA_C), oracle::EX1_BETA_C) < 1e-13);
  CHECK(rel(beta(kEx2, oracle::EX2_ALPHA_C), oracle::EX2_BETA_C) < 1e-13);
  for (const auto& p : samples()) {
    const double e2 = std::exp(2.0 * p.gamma);
    const double b = beta(p, alpha_c(p));
    CHECK(rel(b, 2.0 * p.p0sq * e2 / (e2 - 1.0)) < 1e-12);
    CHECK(std::abs(b * (1.0 - e2) + 2.0 * p.p0sq * e2) < 1e-12 * 2.0 * p.p0sq * e2);
  }
  const double rounded = beta({0.2, 0.00594402}, 1.71615);
  CHECK(rel(rounded, 2.0 * 0.00594402 * std::exp(0.4) / std::expm1(0.4)) < 1e-4);
}

TEST_CASE("normalization constants") {
  CHECK(rel(c_hat(0.2), oracle::EX1_C_HAT) < 1e-14);
  CHECK(rel(c_hat(0.3), oracle::EX2_C_HAT) < 1e-14);
  for (double g : {0.2, 0.3, 0.7}) {
    const Field2D hs = Field2D::from_function(
        make_grid(32, 24), [g](double q, double p) { return null_mode(g, q, p); }, Parity::Even);
    Field2D sq = hs;
    sq.values() = hs.values().cwiseAbs2();
    CHECK(rel(integrate(sq), c_hat(g) * c_hat(g)) < 1e-8);
  }
  CHECK(rel(c_zero(kEx1), oracle::EX1_C_ZERO) < 1e-12);
  CHECK(rel(c_zero(kEx2), oracle::EX2_C_ZERO) < 1e-12);
  CHECK_THROWS_AS(c_zero({0.2, 0.0}), DomainError);
  CHECK(c_zero({0.2, 1e-6}) > c_zero({0.2, 1e-4}));
}

TEST_CASE("z coefficients") {
  const ZCoeffs z1 = z_coeffs(kEx1);
  CHECK(rel(z1.z1, oracle::EX1_Z1) < 1e-12);
  CHECK(rel(z1.z2, oracle::EX1_Z2) < 1e-12);
  const ZCoeffs z2 = z_coeffs(kEx2);
  CHECK(rel(z2.z1, oracle::EX2_Z1) < 1e-12);
  CHECK(rel(z2.z2, oracle::EX2_Z2) < 1e-12);
  for (const auto& p : samples()) {
    const ZCoeffs z = z_coeffs(p);
    const double P = p.p0sq, g = p.gamma;
    const double want = -2.0 * P * std::exp(-4.0 * g) + 4.0 * P * std::exp(-2.0 * g) - 2.0 * P;
    CHECK(std::abs((z.z1 - z.z2) - want) < 1e-13 * std::max(1.0, std::abs(z.z1)));
  }
  const ZCoeffs zz = z_coeffs({0.4, 0.0});
  CHECK(zz.z1 == doctest::Approx(zz.z2).epsilon(1e-15));
  CHECK(zz.z1 == doctest::Approx(0.16 * std::pow(std::expm1(0.8), 2)).epsilon(1e-14));
}

TEST_CASE("pitchfork coefficient") {
  CHECK(rel(o1(kEx1), oracle::EX1_O1) < 1e-12);
  CHECK(rel(o1(kEx2), oracle::EX2_O1) < 1e-12);
  CHECK(rel(o1(kEx1), oracle::EX1_O1_SPECTRAL) < 1e-10);
  CHECK(rel(o2(kEx1), oracle::EX1_O2_SPECTRAL) < 1e-9);
  CHECK(rel(o2(kEx2), oracle::EX2_O2_SPECTRAL) < 1e-9);
  CHECK(rel(o_total(kEx1), oracle::EX1_O1_SPECTRAL + oracle::EX1_O2_SPECTRAL) < 1e-9);
  CHECK(rel(o_total(kEx2), oracle::EX2_O1_SPECTRAL + oracle::EX2_O2_SPECTRAL) < 1e-9);
  for (const auto& p : samples()) {
    const double o = o_total(p);
    CHECK(std::abs(o1(p) + o2(p) - o) <= 1e-10 * std::max(1.0, std::abs(o)));
  }
  CHECK_THROWS_AS(o_total({0.2, 0.0}), DomainError);
  CHECK_THROWS_AS(o1({0.2, 0.0}), DomainError);
}

TEST_CASE("reference values from the expanded expression") {
  CHECK(std::abs(o_total_unscaled(kEx1) - 0.218807) < 1e-5);
  CHECK(std::abs(o_total_unscaled(kEx2) + 0.150203) < 1e-5);
  CHECK(std::isfinite(o2_free_bed(kEx1)));
  CHECK(std::isfinite(o_total_expanded(kEx1)));
}

TEST_CASE("classification") {
  CHECK(classify(kEx1) == BifurcationClass::Supercritical);
  CHECK(classify(kEx2) == BifurcationClass::Supercritical);
  CHECK(classify_value(0.5) == BifurcationClass::Supercritical);
  CHECK(classify_value(-0.5) == BifurcationClass::Subcritical);
  CHECK(classify_value(1e-10) == BifurcationClass::Degenerate);
  CHECK(classify_value(0.01, 0.1) == BifurcationClass::Degenerate);
  const double o = o_total(kEx1);
  for (double tol : {0.0, 1e-9, 1e-3, 0.5 * o}) CHECK(classify(kEx1, tol) == classify(kEx1));
  for (auto c : {BifurcationClass::Supercritical, BifurcationClass::Subcritical,
                 BifurcationClass::Degenerate})
    CHECK(class_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(class_from_string("sideways"), DomainError);
}

TEST_CASE("trivial solution and kernel element") {
  CHECK(trivial_H(0.3, -1.0) == 0.0);
  CHECK(rel(trivial_H(0.2, 0.0), oracle::EX1_H_TOP) < 1e-15);
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double h = trivial_H(0.4, -1.0 + i / 20.0);
    CHECK(h > prev);
    prev = h;
  }
  CHECK(null_mode(0.3, 1.1, -1.0) == doctest::Approx(0.0));
  CHECK(std::abs(null_mode(0.3, std::numbers::pi / 2, -0.4)) < 1e-16);
  CHECK(null_mode(0.3, 0.0, 0.0) == doctest::Approx(-std::expm1(-0.6)).epsilon(1e-15));
}

TEST_CASE("explicit second-order solution") {
  CHECK_THROWS_AS(particular_solution({0.2, 0.0}, 0.0, -0.5), DomainError);
  for (double p : {-0.9, -0.5, 0.0}) {
    const double v = particular_solution(kEx1, std::numbers::pi / 2, p);
    CHECK(std::isfinite(v));
    // cos 2q = -1 on this column, so it sits symmetric to q = 0 about the mean part
    const double a = particular_solution(kEx1, 0.0, p);
    const double b = particular_solution(kEx1, std::numbers::pi, p);
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
  }
}
