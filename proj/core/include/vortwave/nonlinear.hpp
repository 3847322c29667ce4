// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Nonlinear height-function residual, Newton solver on even states and
// pseudo-arclength continuation from the bifurcation point.
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vortwave/fields.hpp"
#include "vortwave/params.hpp"

namespace vortwave {

struct StateVector {
  Field2D h;
  double alpha = 0.0;
};

// Throws InadmissibleError unless h is finite, vanishes on the bed and
// (h+1) h_p > delta everywhere.
void check_admissible(const Field2D& h, double gamma, double delta = 0.0);

struct Residual {
  Field2D g1;          // interior equation, meaningful off the top and bed rows
  Eigen::VectorXd g2;  // top equation
  double norm = 0.0;   // max |g| over the collocated equations
  double scale = 0.0;  // max summed magnitude of the terms of each equation
};

Residual residual_G(const ModelParams& params, double alpha, const Field2D& h);

// Signed cos q coefficient of the top trace of h - H.
double amplitude(const Field2D& h, double gamma);

struct Constraint {
  enum class Kind { FixedAlpha, FixedAmplitude, Arclength };
  Kind kind = Kind::FixedAlpha;
  double value = 0.0;  // amplitude for FixedAmplitude, step length for Arclength
  // Arclength only: base point and unit tangent.
  std::optional<StateVector> base;
  std::optional<StateVector> tangent;

  static Constraint fixed_alpha() { return {}; }
  static Constraint fixed_amplitude(double a) { return {Kind::FixedAmplitude, a, {}, {}}; }
  static Constraint arclength(StateVector base, StateVector tangent, double ds) {
    return {Kind::Arclength, ds, std::move(base), std::move(tangent)};
  }
};

struct NewtonOptions {
  double tol = 1e-10;  // relative to the residual scale
  int max_iter = 25;
  int max_halvings = 30;
  int divergence_window = 5;
  // A full step this small relative to max(1, |h|) also converges, provided
  // the residual has reached stall_factor * tol * scale.  This admits the
  // roundoff floor of the fine grids.
  double step_tol = 1e-12;
  double stall_factor = 100.0;
  // A factorized Jacobian is reused while each step shrinks the residual
  // by at least this factor; 0 refactors on every iteration.
  double reuse_ratio = 0.25;
};

struct NewtonResult {
  StateVector state;
  int iterations = 0;
  double residual_norm = 0.0;
  double scale = 0.0;
};

// Newton iteration on the half grid q in [0, pi] with the bed row removed.
// Throws ConvergenceError on divergence or iteration exhaustion and
// InadmissibleError after max_halvings step reductions.
NewtonResult newton_solve(const ModelParams& params, const StateVector& initial,
                          const Constraint& constraint, const NewtonOptions& opts = {});

// Inner product of the continuation: L2 over the channel plus alpha.
double state_dot(const StateVector& a, const StateVector& b);

// Walks fixed-amplitude solves out from the bifurcation point in steps of at
// most max_step, extrapolating the previous two solutions.  Throws the
// Newton errors when a step fails.
NewtonResult solve_at_amplitude(const ModelParams& params, const GridPtr& grid, double amplitude,
                                double max_step = 0.0025, const NewtonOptions& opts = {});

struct BranchPoint {
  double alpha = 0.0;
  Field2D h;
  double amplitude = 0.0;
  double arclength = 0.0;
  double residual_norm = 0.0;
};

struct ContinuationConfig {
  int steps = 20;
  double ds = 0.0;  // <= 0 picks a step from the predicted branch curvature
  double ds_min = 0.0;  // <= 0 means ds / 1024
  double window = 2e-4;  // predicted |alpha - alpha_c| reached by an automatic step
  int direction = 1;     // sign of the initial tangent
  NewtonOptions newton;
};

struct Branch {
  std::vector<BranchPoint> points;  // the first point is the bifurcation point
  bool truncated = false;
  std::string message;
  double ds = 0.0;
};

Branch continue_branch(const ModelParams& params, const GridPtr& grid,
                       const ContinuationConfig& config = {});

struct DirectionFit {
  BifurcationClass direction = BifurcationClass::Degenerate;
  double coefficient = 0.0;   // c in alpha - alpha_c = c amplitude^2
  double rel_residual = 0.0;  // ||fit error|| / ||alpha - alpha_c||
  int points = 0;
};

// Least-squares fit through the origin over the points with
// |amplitude| > min_amplitude, the first max_points of them.  Throws
// DomainError with fewer than 5 usable points.
DirectionFit detect_direction(const std::vector<BranchPoint>& branch, double alpha_c,
                              double min_amplitude = 1e-9, int max_points = 10);

void write_branch_csv(std::ostream& os, const Branch& b);
std::string branch_to_json(const Branch& b, bool include_fields = false);
Branch branch_from_json(const std::string& text);

}  // namespace vortwave
