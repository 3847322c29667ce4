// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include "vortwave/reconstruct.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <vector>

#include "vortwave/errors.hpp"

namespace vortwave {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOdeTol = 1e-12;

using OdeState = std::array<double, 1>;

// Integrates dPsi/drho = F(-Psi) from rho = 0 (the surface) through the
// ascending rho values and stores Psi at each.
template <class F>
std::vector<double> integrate_down(F&& inv_hp, const std::vector<double>& rho) {
  std::vector<double> out;
  out.reserve(rho.size());
  OdeState x{0.0};
  auto rhs = [&](const OdeState& s, OdeState& ds, double) { ds[0] = inv_hp(-s[0]); };
  auto obs = [&](const OdeState& s, double) { out.push_back(s[0]); };
  try {
    auto stepper = odeint::make_dense_output(kOdeTol, kOdeTol, odeint::runge_kutta_dopri5<OdeState>());
    const double span = rho.back() - rho.front();
    odeint::integrate_times(stepper, rhs, x, rho.begin(), rho.end(),
                            span > 0.0 ? span / 64.0 : 1e-3, obs);
  } catch (const std::exception& e) {
    throw ReconstructionError(std::string("stream function integration failed: ") + e.what());
  }
  if (out.size() != rho.size()) throw ReconstructionError("stream function integration stopped early");
  return out;
}

Field2D reciprocal(const Field2D& f) {
  Field2D r = f;
  r.values() = f.values().cwiseInverse();
  return r;
}

}  // namespace

void DimensionalParams::validate() const {
  if (!(a > 0.0 && omega0 > 0.0 && rho > 0.0 && g > 0.0))
    throw DomainError("a, omega0, rho and g must be positive");
}

FieldInterpolant::FieldInterpolant(const Field2D& f) : grid_(f.grid()) {
  const auto& g = *grid_;
  const int nq = g.nq(), M = nq / 2, np = g.np();
  a_ = Eigen::MatrixXd::Zero(M + 1, np);
  b_ = Eigen::MatrixXd::Zero(M + 1, np);
  for (int k = 0; k <= M; ++k) {
    const double w = (k == 0 || k == M) ? 1.0 / nq : 2.0 / nq;
    for (int i = 0; i < nq; ++i) {
      const double c = std::cos(k * g.q()(i)), s = std::sin(k * g.q()(i));
      a_.row(k) += w * c * f.values().row(i);
      if (k != 0 && k != M) b_.row(k) += w * s * f.values().row(i);
    }
  }
}

Eigen::VectorXd FieldInterpolant::column(double q) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(a_.cols());
  for (int k = 0; k < a_.rows(); ++k)
    c += std::cos(k * q) * a_.row(k).transpose() + std::sin(k * q) * b_.row(k).transpose();
  return c;
}

double FieldInterpolant::operator()(double q, double p) const {
  return grid_->interp_p(column(q), p);
}

Eigen::VectorXd surface(const Field2D& h) {
  Eigen::VectorXd S = trace_top(h).array() + 1.0;
  if (!(S.minCoeff() > 1.0)) throw InadmissibleError("free surface does not lie above the bed");
  return S;
}

PhysicalFields stream_from_height(const Field2D& h, int nr, double bed_tol) {
  if (nr < 2) throw DomainError("nr must be at least 2");
  const auto& g = *h.grid();
  const Field2D hp = d_p(h);
  if (!(hp.values().minCoeff() > 0.0))
    throw ReconstructionError("h_p is not positive; stream function is not invertible");
  const Field2D inv = reciprocal(hp);
  Field2D ratio = d_q(h);
  ratio.values() = ratio.values().cwiseProduct(inv.values());

  PhysicalFields f;
  f.theta = g.q();
  f.S = surface(h);
  const int nq = g.nq();
  f.R.resize(nq, nr);
  f.Psi.resize(nq, nr);
  f.PsiR.resize(nq, nr);
  f.PsiTheta.resize(nq, nr);
  for (int i = 0; i < nq; ++i) {
    const Eigen::VectorXd icol = inv.values().row(i).transpose();
    const Eigen::VectorXd rcol = ratio.values().row(i).transpose();
    const double S = f.S(i);
    std::vector<double> rho(nr);
    for (int k = 0; k < nr; ++k) rho[k] = (S - 1.0) * k / (nr - 1.0);
    const auto psi = integrate_down([&](double p) { return g.interp_p(icol, p); }, rho);
    for (int k = 0; k < nr; ++k) {
      const int c = nr - 1 - k;  // column 0 is the bed
      f.R(i, c) = k == nr - 1 ? 1.0 : S - rho[k];
      f.Psi(i, c) = psi[k];
      f.PsiR(i, c) = -g.interp_p(icol, -psi[k]);
      f.PsiTheta(i, c) = g.interp_p(rcol, -psi[k]);
    }
    for (int c = 0; c + 1 < nr; ++c)
      if (!(f.Psi(i, c) > f.Psi(i, c + 1)))
        throw ReconstructionError("stream function is not decreasing in R");
    if (std::abs(f.Psi(i, 0) - 1.0) > bed_tol)
      throw ReconstructionError("stream function misses the bed value 1");
  }
  f.U = Eigen::MatrixXd::Zero(nq, nr);
  f.V = f.R;
  f.Upsilon = Eigen::MatrixXd::Zero(nq, nr);
  return f;
}

double stream_at(const FieldInterpolant& inv_hp, const FieldInterpolant& h, double theta,
                 double R) {
  const auto& g = *inv_hp.grid();
  const double S = h(theta, 0.0) + 1.0;
  if (!(R >= 1.0 && R <= S)) throw DomainError("radius outside the fluid");
  const Eigen::VectorXd icol = inv_hp.column(theta);
  if (R == S) return 0.0;
  return integrate_down([&](double p) { return g.interp_p(icol, p); }, {0.0, S - R}).back();
}

void velocities(PhysicalFields& f, const ModelParams& params, double alpha, double q0) {
  params.validate();
  f.p0 = params.p0();
  f.alpha = alpha;
  f.q0 = q0;
  f.U = f.p0 * f.PsiTheta.cwiseQuotient(f.R);
  f.V = f.R - f.p0 * f.PsiR;
  f.E = lambda_of(params, alpha) - alpha + q0;
  const Eigen::ArrayXXd R = f.R.array(), W = (f.V - f.R).array(), U = f.U.array();
  f.Upsilon = (f.E - (0.5 * (W.square() + U.square()) + alpha * (R - 1.0) + q0 +
                      2.0 * f.p0 * f.Psi.array() - 0.5 * R.square()))
                  .matrix();
}

DimensionalFields to_dimensional(const PhysicalFields& f, const DimensionalParams& dim) {
  dim.validate();
  const double vs = dim.a * dim.omega0;
  DimensionalFields d;
  d.r = dim.a * f.R;
  d.u_r = vs * f.U;
  d.u_theta = vs * f.V;
  d.pressure = (vs * vs * dim.rho) * (f.Upsilon.array() + dim.q0()).matrix();
  d.eta = dim.a * f.S;
  return d;
}

BernoulliReport bernoulli_check(const PhysicalFields& f, const ModelParams& params) {
  const int last = static_cast<int>(f.R.cols()) - 1;
  const Eigen::ArrayXd S = f.R.col(last).array(), W = (f.V - f.R).col(last).array(),
                       U = f.U.col(last).array();
  const Eigen::ArrayXd kin = 0.5 * (W.square() + U.square());
  const Eigen::ArrayXd Es = kin + f.alpha * (S - 1.0) + f.q0 - 0.5 * S.square();
  const Eigen::ArrayXd lam = kin + f.alpha * S - 0.5 * S.square();

  BernoulliReport r;
  r.E_mean = Es.mean();
  r.E_spread = (Es - r.E_mean).abs().maxCoeff();
  r.lambda_error = (lam - lambda_of(params, f.alpha)).abs().maxCoeff();
  const Eigen::ArrayXXd R = f.R.array(), Wf = (f.V - f.R).array(), Uf = f.U.array();
  const Eigen::ArrayXXd E = 0.5 * (Wf.square() + Uf.square()) + f.alpha * (R - 1.0) +
                            f.Upsilon.array() + f.q0 + 2.0 * f.p0 * f.Psi.array() -
                            0.5 * R.square();
  r.interior_spread = (E - f.E).abs().maxCoeff();
  return r;
}

Eigen::VectorXd mass_flux(const PhysicalFields& f) {
  return f.Psi.col(f.Psi.cols() - 1) - f.Psi.col(0);
}

double round_trip_error(const Field2D& h, int samples) {
  const FieldInterpolant hi(h);
  const FieldInterpolant inv(reciprocal(d_p(h)));
  const double phi = 0.5 * (1.0 + std::sqrt(5.0)), r2 = std::sqrt(2.0);
  double err = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double theta = 2.0 * kPi * std::fmod(0.5 + k * phi, 1.0);
    const double S = hi(theta, 0.0) + 1.0;
    const double R = 1.0 + (S - 1.0) * std::fmod(0.5 + k * r2, 1.0);
    const double psi = stream_at(inv, hi, theta, R);
    err = std::max(err, std::abs(hi(theta, -psi) - (R - 1.0)));
  }
  return err;
}

void write_fields_csv(std::ostream& os, const PhysicalFields& f) {
  os << "Theta,R,Psi,U,V,Upsilon\n" << std::setprecision(17);
  for (int i = 0; i < f.R.rows(); ++i)
    for (int c = 0; c < f.R.cols(); ++c)
      os << f.theta(i) << ',' << f.R(i, c) << ',' << f.Psi(i, c) << ',' << f.U(i, c) << ','
         << f.V(i, c) << ',' << f.Upsilon(i, c) << '\n';
}

void write_surface_csv(std::ostream& os, const PhysicalFields& f) {
  os << "Theta,S\n" << std::setprecision(17);
  for (int i = 0; i < f.S.size(); ++i) os << f.theta(i) << ',' << f.S(i) << '\n';
}

void write_surface_svg(std::ostream& os, const PhysicalFields& f, const std::string& title) {
  const double size = 480.0, c = size / 2.0;
  const double scale = 0.42 * size / f.S.maxCoeff();
  auto pt = [&](double r, double th) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << c + scale * r * std::cos(th) << ','
      << c - scale * r * std::sin(th);
    return s.str();
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<polygon fill=\"#9ecae1\" stroke=\"#08519c\" stroke-width=\"1.5\" points=\"";
  for (int i = 0; i < f.S.size(); ++i) os << pt(f.S(i), f.theta(i)) << ' ';
  os << "\"/>\n";
  os << "<circle cx=\"" << c << "\" cy=\"" << c << "\" r=\"" << scale
     << "\" fill=\"#bdbdbd\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">"
     << (title.empty() ? "free surface S(Theta), bed R = 1" : title) << "</text>\n";
  os << "</svg>\n";
}

}  // namespace vortwave
