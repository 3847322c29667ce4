// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/linops.hpp"
#include "vortwave/nonlinear.hpp"

using namespace vortwave;

namespace {

const ModelParams kEx1{oracle::EX1_GAMMA, oracle::EX1_P0SQ};
const ModelParams kEx2{oracle::EX2_GAMMA, oracle::EX2_P0SQ};

// Even perturbation vanishing on the bed.
Field2D bump(const GridPtr& g) {
  return Field2D::from_function(g, [](double q, double p) {
    return (1.0 + p) * (0.3 * std::cos(q) - 0.2 * std::cos(2.0 * q) + 0.1 * p) * std::exp(p);
  }, Parity::Even);
}

double interior_max(const Field2D& f) {
  const int nb = f.grid()->bed();
  return f.values().middleCols(1, nb - 1).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("kernel element and second-order solution") {
  const GridPtr g = make_grid(64, 32);
  for (const auto& p : {kEx1, kEx2}) {
    CHECK(null_mode_residual(p, g).within(1e-8));
    CHECK(particular_solution_residual(p, g).within(1e-8));
  }
  const Field2D hs = null_mode_field(g, 0.2);
  CHECK(trace_bed(hs).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(top_cos_coefficient(hs, 1) == doctest::Approx(1.0 - std::exp(-0.4)).epsilon(1e-14));
  // away from alpha_c the kernel element is no longer annihilated
  const auto off = apply_linearized_trivial(kEx1, alpha_c(kEx1) + 0.1, hs);
  CHECK(off.top.cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("linearization at the trivial solution") {
  const GridPtr g = make_grid(32, 20);
  const Field2D f = bump(g);
  const Field2D H = trivial_height(g, kEx1.gamma);
  const double a = 1.9;
  const auto t = apply_linearized_trivial(kEx1, a, f);
  const auto gen = apply_linearized_general(kEx1, a, H, f);
  const double s = std::max(1.0, interior_max(t.interior));
  CHECK(interior_max(gen.interior - t.interior) < 1e-11 * s);
  CHECK((gen.top - t.top).cwiseAbs().maxCoeff() < 1e-11 * std::max(1.0, t.top.cwiseAbs().maxCoeff()));
}

TEST_CASE("linearization matches finite differences of the residual") {
  const GridPtr g = make_grid(32, 20);
  const Field2D H = trivial_height(g, kEx2.gamma);
  const Field2D h = H + 0.02 * null_mode_field(g, kEx2.gamma);
  const Field2D f = bump(g);
  const double a = alpha_c(kEx2) + 0.01;
  const auto lin = apply_linearized_general(kEx2, a, h, f);
  double prev_i = 0.0, prev_t = 0.0;
  for (double eps : {1e-3, 5e-4}) {
    const Residual rp = residual_G(kEx2, a, h + eps * f);
    const Residual rm = residual_G(kEx2, a, h - (eps * f));
    const Field2D di = (rp.g1 - rm.g1) * (0.5 / eps) - lin.interior;
    const double ei = interior_max(di);
    const double et = ((rp.g2 - rm.g2) / (2.0 * eps) - lin.top).cwiseAbs().maxCoeff();
    CHECK(ei < 1e-4);
    CHECK(et < 1e-4);
    if (prev_i > 1e-12) CHECK(ei < 0.4 * prev_i);
    if (prev_t > 1e-12) CHECK(et < 0.4 * prev_t);
    prev_i = ei;
    prev_t = et;
  }
}

TEST_CASE("mode eigenvalues") {
  const double ac = alpha_c(kEx1);
  const Eigen::VectorXd ev = ode_eigs({1, kEx1, ac, 32});
  CHECK(ev.size() == 30);
  for (int i = 1; i < ev.size(); ++i) CHECK(ev(i) >= ev(i - 1));
  CHECK(std::abs(ev.maxCoeff()) < 1e-7 * std::abs(ev.minCoeff()));
  CHECK(sigma1(kEx1, ac - 0.05) * sigma1(kEx1, ac + 0.05) < 0.0);
  // higher modes sit below lower ones at fixed alpha
  for (int k = 1; k < 5; ++k)
    CHECK(ode_eigs({k + 1, kEx1, ac, 32}).maxCoeff() < ode_eigs({k, kEx1, ac, 32}).maxCoeff());
  CHECK_THROWS_AS(ode_eigs({1, kEx1, alpha_s(kEx1) - 0.01, 32}), DomainError);
  CHECK_THROWS_AS(ode_eigs({-1, kEx1, ac, 32}), DomainError);
  CHECK_THROWS_AS(ode_eigs({1, kEx1, ac, 3}), DomainError);

  const Eigen::VectorXd M = ode_principal_mode({1, kEx1, ac, 32});
  CHECK(M.size() == 32);
  CHECK(M(31) == 0.0);
  CHECK(M.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("numerical critical value") {
  for (const auto& p : {kEx1, kEx2}) {
    const double ac = alpha_c(p);
    const double an = find_alpha_c_numeric(p, {ac - 0.1, ac + 0.1});
    CHECK(std::abs(an - ac) / ac < 1e-6);
  }
  CHECK(find_alpha_c_numeric({0.3, 0.0}, {1.0, 2.0}) == std::exp(0.3));
  CHECK_THROWS_AS(find_alpha_c_numeric({0.3, 0.0}, {2.0, 3.0}), BracketError);
  const double ac = alpha_c(kEx1);
  CHECK_THROWS_AS(find_alpha_c_numeric(kEx1, {ac + 0.1, ac + 0.2}), BracketError);
}

TEST_CASE("Rayleigh quotients bound the top eigenvalue") {
  const GridPtr g = make_grid(2, 32);
  for (double a : {alpha_c(kEx1) - 0.05, alpha_c(kEx1), alpha_c(kEx1) + 0.2}) {
    const double s1 = sigma1(kEx1, a);
    const double slack = 1e-8 * std::max(1.0, std::abs(s1));
    const Eigen::VectorXd M = ode_principal_mode({1, kEx1, a, 32});
    CHECK(std::abs(rayleigh_sigma1(kEx1, a, M) + s1) < 1e-8 * std::max(1.0, std::abs(s1)));
    for (double c : {0.5, 1.0, 2.0}) {
      Eigen::VectorXd t(32);
      for (int j = 0; j < 32; ++j) t(j) = std::sin(c * (1.0 + g->p()(j))) + 0.1 * c * (1.0 + g->p()(j));
      CHECK(rayleigh_sigma1(kEx1, a, t) >= -s1 - slack);
    }
    Eigen::VectorXd H(32);
    for (int j = 0; j < 32; ++j) H(j) = trivial_H(kEx1.gamma, g->p()(j));
    CHECK(rayleigh_sigma1(kEx1, a, H) == doctest::Approx(rayleigh_bound_trivial(kEx1, a)).epsilon(1e-10));
    CHECK(rayleigh_bound_trivial(kEx1, a) >= -s1 - slack);
  }
  CHECK_THROWS_AS(rayleigh_bound_trivial({0.2, 0.0}, 1.5), DomainError);
  CHECK_THROWS_AS(rayleigh_sigma1(kEx1, 1.8, Eigen::VectorXd::Zero(32)), DomainError);
}

TEST_CASE("Morse index") {
  const double a = 1.8;
  const int m = morse_index(kEx1, a);
  CHECK(m == 5);
  for (int kmax : {10, 14}) CHECK(morse_index(kEx1, a, kmax) == m);
  CHECK(morse_index(kEx1, a, 8, 40) == m);
  CHECK_THROWS_AS(spectrum(kEx1, a, 3), NumericalError);
  CHECK_THROWS_AS(spectrum(kEx1, a, 0), DomainError);

  const Spectrum s = spectrum(kEx2, alpha_c(kEx2) + 0.05);
  const Spectrum back = spectrum_from_json(to_json(s));
  CHECK(back.morse_index == s.morse_index);
  CHECK(back.kmax == s.kmax);
  CHECK(back.alpha == s.alpha);
  REQUIRE(back.per_k.size() == s.per_k.size());
  for (std::size_t k = 0; k < s.per_k.size(); ++k)
    CHECK((back.per_k[k].array() == s.per_k[k].array()).all());
}

TEST_CASE("solvability of the second-order problem") {
  const GridPtr g = make_grid(64, 32);
  for (const auto& p : {kEx1, kEx2}) {
    const Field2D rhs = Field2D::from_function(
        g, [&](double q, double pp) { return second_order_interior_rhs(p.gamma, q, pp); });
    Eigen::VectorXd top(g->nq());
    for (int i = 0; i < g->nq(); ++i) top(i) = second_order_top_rhs(p, g->q()(i));
    const double r = orthogonality_residual(p, rhs, top);
    const double s = orthogonality_scale(p, rhs, top);
    CHECK(s > 0.0);
    CHECK(std::abs(r) < 1e-8 * s);
  }
  CHECK_THROWS_AS(orthogonality_residual(kEx1, Field2D::zeros(g), Eigen::VectorXd::Zero(3)),
                  DomainError);
}

TEST_CASE("stacked operator") {
  const GridPtr g = make_grid(16, 12);
  const Eigen::MatrixXd A = stacked_operator(kEx1, alpha_c(kEx1), g);
  CHECK(A.rows() == 9 * 11);
  CHECK(A.cols() == 9 * 11);
  Eigen::VectorXd sv;
  near_null_count(A, 1e-6, &sv);
  CHECK(sv.size() == A.rows());
  for (int i = 1; i < sv.size(); ++i) CHECK(sv(i) <= sv(i - 1));
  const Eigen::MatrixXd D = Eigen::Vector3d(1.0, 1e-3, 1e-9).asDiagonal();
  CHECK(near_null_count(D) == 1);
  CHECK(near_null_count(D, 1e-2) == 2);
}
