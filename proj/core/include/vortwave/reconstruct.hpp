// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Inversion of the semi-hodograph transform: stream function, surface,
// velocities and pressure on the annulus 1 < R < S(Theta).
#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>

#include "vortwave/fields.hpp"
#include "vortwave/params.hpp"

namespace vortwave {

struct DimensionalParams {
  double a = 1.0;       // bed radius
  double omega0 = 1.0;  // half the vorticity
  double rho = 1.0;
  double g = 1.0;
  double p_atm = 0.0;

  void validate() const;
  double alpha() const { return g / (a * omega0 * omega0); }
  double q0() const { return p_atm / (a * a * omega0 * omega0 * rho); }
};

// Trigonometric interpolation in q times barycentric interpolation in p.
class FieldInterpolant {
 public:
  explicit FieldInterpolant(const Field2D& f);
  double operator()(double q, double p) const;
  // Nodal values in p at an arbitrary q.
  Eigen::VectorXd column(double q) const;
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
  Eigen::MatrixXd a_, b_;  // cos and sin coefficients, (nq/2 + 1) x np
};

// Samples are on the q nodes of the height grid (rows) and on nr radii from
// R = 1 (column 0) to R = S(Theta) (last column).
struct PhysicalFields {
  Eigen::VectorXd theta;
  Eigen::VectorXd S;
  Eigen::MatrixXd R, Psi, PsiR, PsiTheta;
  Eigen::MatrixXd U, V, Upsilon;
  double E = 0.0;
  double p0 = 0.0;
  double alpha = 0.0;
  double q0 = 0.0;
};

// S = h(Theta, 0) + 1 on the q nodes.  Throws InadmissibleError if S <= 1.
Eigen::VectorXd surface(const Field2D& h);

// Integrates dPsi/dR = -1/h_p(Theta, -Psi) down from Psi(S) = 0.  Throws
// ReconstructionError on integration failure, non-monotone Psi or a bed
// value off 1 by more than bed_tol.
PhysicalFields stream_from_height(const Field2D& h, int nr = 33, double bed_tol = 1e-7);

// Psi at arbitrary (Theta, R) by the same integration.
double stream_at(const FieldInterpolant& inv_hp, const FieldInterpolant& h, double theta,
                 double R);

// U = (p0/R) Psi_Theta and V = R - p0 Psi_R, then Upsilon from Bernoulli with
// E = lambda - alpha + Q0.
void velocities(PhysicalFields& f, const ModelParams& params, double alpha, double q0 = 0.0);

struct DimensionalFields {
  Eigen::MatrixXd r, u_r, u_theta, pressure;
  Eigen::VectorXd eta;
};
DimensionalFields to_dimensional(const PhysicalFields& f, const DimensionalParams& dim);

struct BernoulliReport {
  double E_mean = 0.0;
  double E_spread = 0.0;      // max |E - E_mean| on the free surface
  double lambda_error = 0.0;  // max |surface lambda - lambda(alpha)|
  double interior_spread = 0.0;
};
BernoulliReport bernoulli_check(const PhysicalFields& f, const ModelParams& params);

// Psi(S) - Psi(1) for every Theta.
Eigen::VectorXd mass_flux(const PhysicalFields& f);

// max |h(Theta, -Psi(R, Theta)) - (R - 1)| over a deterministic scatter of
// points in the fluid.
double round_trip_error(const Field2D& h, int samples = 100);

void write_fields_csv(std::ostream& os, const PhysicalFields& f);
void write_surface_csv(std::ostream& os, const PhysicalFields& f);
void write_surface_svg(std::ostream& os, const PhysicalFields& f, const std::string& title = "");

}  // namespace vortwave
