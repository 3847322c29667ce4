// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "oracle_values.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/linops.hpp"
#include "vortwave/nonlinear.hpp"

using namespace vortwave;

namespace {

const ModelParams kEx1{oracle::EX1_GAMMA, oracle::EX1_P0SQ};
const ModelParams kEx2{oracle::EX2_GAMMA, oracle::EX2_P0SQ};

Field2D wobble(const GridPtr& g) {
  return Field2D::from_function(g, [](double q, double p) {
    return (1.0 + p) * (std::cos(q) + 0.5 * std::cos(3.0 * q) + p);
  }, Parity::Even);
}

const Branch& ex2_branch() {
  static const Branch b = [] {
    ContinuationConfig cfg;
    cfg.steps = 8;
    return continue_branch(kEx2, make_grid(32, 16), cfg);
  }();
  return b;
}

std::vector<BranchPoint> synthetic(double ac, double c, int n) {
  std::vector<BranchPoint> pts;
  for (int i = 0; i < n; ++i) {
    BranchPoint p;
    p.amplitude = 1e-3 * i;
    p.alpha = ac + c * p.amplitude * p.amplitude;
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("trivial solution solves the equations for every alpha") {
  const GridPtr g = make_grid(64, 32);
  for (const auto& p : {kEx1, kEx2}) {
    const Field2D H = trivial_height(g, p.gamma);
    CHECK(std::abs(amplitude(H, p.gamma)) < 1e-15);
    for (double da : {0.05, 0.8, 2.5}) {
      const Residual r = residual_G(p, alpha_s(p) + da, H);
      CHECK(r.scale > 0.0);
      CHECK(r.norm < 1e-11 * r.scale);
    }
  }
}

TEST_CASE("residual orders near the trivial solution") {
  const GridPtr g = make_grid(32, 20);
  const Field2D H = trivial_height(g, kEx1.gamma);
  const Field2D hs = null_mode_field(g, kEx1.gamma);
  const Field2D w = wobble(g);
  const double ac = alpha_c(kEx1);
  auto norm = [&](const Field2D& h) { return residual_G(kEx1, ac, h).norm; };
  const double e = 1e-3;
  // generic direction: first order
  const double r1 = norm(H + e * w), r2 = norm(H + (0.5 * e) * w);
  CHECK(r1 / r2 == doctest::Approx(2.0).epsilon(0.02));
  // kernel direction: second order
  const double s1 = norm(H + e * hs), s2 = norm(H + (0.5 * e) * hs);
  CHECK(s1 / s2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(s1 < 1e-2 * r1);
}

TEST_CASE("admissibility") {
  const GridPtr g = make_grid(16, 8);
  const Field2D H = trivial_height(g, 0.2);
  CHECK_NOTHROW(check_admissible(H, 0.2));
  Field2D lifted = H;
  lifted.values().col(g->bed()).array() += 1e-3;
  CHECK_THROWS_AS(check_admissible(lifted, 0.2), InadmissibleError);
  const Field2D folded = H - 2.0 * Field2D::from_function(g, [](double, double p) { return 1.0 + p; });
  CHECK_THROWS_AS(check_admissible(folded, 0.2), InadmissibleError);
  CHECK_THROWS_AS(check_admissible(H, 0.2, 10.0), InadmissibleError);
}

TEST_CASE("Newton at fixed alpha") {
  const GridPtr g = make_grid(32, 16);
  const Field2D H = trivial_height(g, kEx1.gamma);
  const double a = alpha_c(kEx1) - 0.1;
  const NewtonResult r0 = newton_solve(kEx1, {H, a}, Constraint::fixed_alpha());
  CHECK(r0.iterations <= 1);
  CHECK((r0.state.h - H).max_abs() < 1e-12);

  const Field2D start = H + 1e-3 * wobble(g);
  const NewtonResult r = newton_solve(kEx1, {start, a}, Constraint::fixed_alpha());
  CHECK(r.state.alpha == a);
  CHECK((r.state.h - H).max_abs() < 1e-9);
  CHECK(r.residual_norm <= 100.0 * 1e-10 * r.scale);
  CHECK(r.iterations <= 8);
}

TEST_CASE("Newton at fixed amplitude") {
  const GridPtr g = make_grid(32, 16);
  const NewtonResult r = solve_at_amplitude(kEx2, g, 0.01);
  CHECK(amplitude(r.state.h, kEx2.gamma) == doctest::Approx(0.01).epsilon(1e-10));
  CHECK(r.state.alpha > alpha_c(kEx2));
  CHECK(r.residual_norm <= 100.0 * 1e-10 * r.scale);
  CHECK(even_defect(r.state.h) < 1e-12);
  // the reflected amplitude sits on the same alpha
  const NewtonResult m = solve_at_amplitude(kEx2, g, -0.01);
  CHECK(m.state.alpha == doctest::Approx(r.state.alpha).epsilon(1e-9));
  CHECK_THROWS_AS(solve_at_amplitude(kEx2, g, 0.01, 0.0), DomainError);
}

TEST_CASE("continuation leaves the trivial branch") {
  const Branch& b = ex2_branch();
  REQUIRE(b.points.size() >= 6);
  CHECK_FALSE(b.truncated);
  const double ac = alpha_c(kEx2);
  CHECK(b.points.front().alpha == ac);
  CHECK(b.points.front().amplitude == 0.0);
  for (std::size_t i = 1; i < b.points.size(); ++i) {
    CHECK(b.points[i].arclength > b.points[i - 1].arclength);
    CHECK(std::abs(b.points[i].amplitude) > std::abs(b.points[i - 1].amplitude));
    CHECK(b.points[i].alpha > ac);
  }
  const DirectionFit f = detect_direction(b.points, ac);
  CHECK(f.direction == classify(kEx2));
  CHECK(f.rel_residual < 0.05);
}

TEST_CASE("continuation in the opposite direction mirrors the branch") {
  ContinuationConfig cfg;
  cfg.steps = 8;
  cfg.direction = -1;
  const Branch m = continue_branch(kEx2, make_grid(32, 16), cfg);
  const Branch& b = ex2_branch();
  REQUIRE(m.points.size() == b.points.size());
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    CHECK(m.points[i].amplitude == doctest::Approx(-b.points[i].amplitude).epsilon(1e-7));
    CHECK(m.points[i].alpha == doctest::Approx(b.points[i].alpha).epsilon(1e-10));
  }
  cfg.direction = 0;
  CHECK_THROWS_AS(continue_branch(kEx2, make_grid(32, 16), cfg), DomainError);
  CHECK_THROWS_AS(continue_branch({0.3, 0.0}, make_grid(32, 16)), DomainError);
}

TEST_CASE("branch points are converged solutions") {
  const Branch& b = ex2_branch();
  const BranchPoint& p = b.points.back();
  const NewtonResult r = newton_solve(kEx2, {p.h, p.alpha}, Constraint::fixed_alpha());
  CHECK((r.state.h - p.h).max_abs() < 1e-8);
  const Residual res = residual_G(kEx2, p.alpha, p.h);
  CHECK(res.norm <= 100.0 * 1e-10 * res.scale);
}

TEST_CASE("direction fit") {
  const double ac = 1.5;
  const DirectionFit sup = detect_direction(synthetic(ac, 40.0, 8), ac);
  CHECK(sup.direction == BifurcationClass::Supercritical);
  CHECK(sup.coefficient == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(sup.rel_residual < 1e-12);
  CHECK(sup.points == 7);
  CHECK(detect_direction(synthetic(ac, -3.0, 8), ac).direction == BifurcationClass::Subcritical);
  CHECK(detect_direction(synthetic(ac, 0.0, 8), ac).direction == BifurcationClass::Degenerate);
  CHECK(detect_direction(synthetic(ac, 5.0, 30), ac).points == 10);
  CHECK_THROWS_AS(detect_direction(synthetic(ac, 1.0, 5), ac), DomainError);
}

TEST_CASE("branch serialization") {
  const Branch& b = ex2_branch();
  const Branch back = branch_from_json(branch_to_json(b, true));
  REQUIRE(back.points.size() == b.points.size());
  CHECK(back.ds == b.ds);
  CHECK(back.truncated == b.truncated);
  for (std::size_t i = 0; i < b.points.size(); ++i) {
    CHECK(back.points[i].alpha == b.points[i].alpha);
    CHECK(back.points[i].amplitude == b.points[i].amplitude);
    CHECK((back.points[i].h.values().array() == b.points[i].h.values().array()).all());
  }
  CHECK_THROWS_AS(branch_from_json("[1, 2"), IoError);

  std::ostringstream os;
  write_branch_csv(os, b);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "alpha,amplitude,arclength,residual_norm");
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    double a;
    ls >> a;
    CHECK(a == b.points[rows].alpha);
    ++rows;
  }
  CHECK(rows == b.points.size());
}
