// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Linearizations of the height-function system, the per-wavenumber mode
// eigenproblems and the Morse index.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "vortwave/fields.hpp"
#include "vortwave/params.hpp"

namespace vortwave {

// Interior field and top trace of an operator pair.
struct OperatorPair {
  Field2D interior;
  Eigen::VectorXd top;
};

// Sampled trivial solution, kernel element h* and explicit second-order
// solution.
Field2D trivial_height(const GridPtr& grid, double gamma);
Field2D null_mode_field(const GridPtr& grid, double gamma);
Field2D particular_field(const GridPtr& grid, const ModelParams& params);

// Derivatives of a height field.  Only h - H is differentiated numerically;
// the derivatives of H are added in closed form.
struct HeightDerivatives {
  Field2D u;  // h + 1
  Field2D hq, hp, hqq, hpp, hqp;
};
HeightDerivatives height_derivatives(const Field2D& h, double gamma);

// Linearization at the trivial solution H.
OperatorPair apply_linearized_trivial(const ModelParams& params, double alpha, const Field2D& f);
// Directional derivative of the residual at an arbitrary state h.
OperatorPair apply_linearized_general(const ModelParams& params, double alpha, const Field2D& h,
                                      const Field2D& f);

struct OdeEigenProblem {
  int k = 1;
  ModelParams params;
  double alpha = 0.0;
  int np = 32;

  void validate() const;
};

// Eigenvalues of the mode-k problem with Dirichlet bed and Robin top rows,
// ascending.  Throws NumericalError on a non-real eigenvalue.
Eigen::VectorXd ode_eigs(const OdeEigenProblem& prob);
// Eigenvector of the largest eigenvalue, sampled on all np nodes.
Eigen::VectorXd ode_principal_mode(const OdeEigenProblem& prob);

// Principal k = 1 eigenvalue; changes sign at alpha_c.
double sigma1(const ModelParams& params, double alpha, int np = 32);

// Root of sigma1 in the bracket.  Throws BracketError without a sign change.
double find_alpha_c_numeric(const ModelParams& params, std::pair<double, double> bracket,
                            int np = 32);

// Quotient bounding -sigma1 from above, for M sampled on the np Chebyshev
// nodes (M at p = -1 must vanish).
double rayleigh_sigma1(const ModelParams& params, double alpha, const Eigen::VectorXd& testM);
// The quotient for M = e^{gamma (p+1)} - 1 in closed form.
double rayleigh_bound_trivial(const ModelParams& params, double alpha);

struct Spectrum {
  double alpha = 0.0;
  int kmax = 0;
  std::vector<Eigen::VectorXd> per_k;  // per_k[k], ascending
  int morse_index = 0;
};

// Throws NumericalError if an eigenvalue lies within crossing_tol of zero or
// the k = kmax modes are not all negative.
Spectrum spectrum(const ModelParams& params, double alpha, int kmax = 8, int np = 32,
                  double crossing_tol = 1e-8);
int morse_index(const ModelParams& params, double alpha, int kmax = 8, int np = 32);

std::string to_json(const Spectrum& s);
Spectrum spectrum_from_json(const std::string& text);

// l(u, b): interior integral against (1+H)^{-4} h* minus the weighted top
// integral of b.  Vanishes on the range of the linearization at alpha_c.
double orthogonality_residual(const ModelParams& params, const Field2D& u,
                              const Eigen::VectorXd& b);
// Sum of the magnitudes of both parts of l(u, b).
double orthogonality_scale(const ModelParams& params, const Field2D& u, const Eigen::VectorXd& b);

// Linearization at H restricted to even fields vanishing on the bed, with
// unknowns on the half grid q in [0, pi]: interior rows then the top row
// for each q node.
Eigen::MatrixXd stacked_operator(const ModelParams& params, double alpha, const GridPtr& grid);
// Singular values below rel_tol times the largest.
int near_null_count(const Eigen::MatrixXd& op, double rel_tol = 1e-6,
                    Eigen::VectorXd* singular_values = nullptr);

struct ResidualCheck {
  double interior = 0.0;
  double top = 0.0;
  double interior_scale = 0.0;
  double top_scale = 0.0;
  bool within(double rel) const {
    return interior <= rel * interior_scale && top <= rel * top_scale;
  }
};

// Explicit second-order solution against its analytic right-hand sides.
ResidualCheck particular_solution_residual(const ModelParams& params, const GridPtr& grid);
// Linearization applied to h* at alpha_c.
ResidualCheck null_mode_residual(const ModelParams& params, const GridPtr& grid);

}  // namespace vortwave
