// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include "vortwave/linops.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>

#include "vortwave/errors.hpp"

namespace vortwave {

namespace {

constexpr double kPi = std::numbers::pi;

// E(p) = 1 + H(p) at every column of the grid.
Eigen::RowVectorXd column_E(const Grid& g, double gamma) {
  Eigen::RowVectorXd E(g.np());
  for (int j = 0; j < g.np(); ++j) E(j) = std::exp(gamma * (g.p()(j) + 1.0));
  return E;
}

// Even-folded q matrix on the half grid i, m in [0, nq/2].
Eigen::MatrixXd fold_even(const Eigen::MatrixXd& D) {
  const int nq = static_cast<int>(D.rows()), h = nq / 2;
  Eigen::MatrixXd F(h + 1, h + 1);
  for (int i = 0; i <= h; ++i)
    for (int m = 0; m <= h; ++m) F(i, m) = D(i, m) + ((m > 0 && m < h) ? D(i, nq - m) : 0.0);
  return F;
}

}  // namespace

Field2D trivial_height(const GridPtr& grid, double gamma) {
  return Field2D::from_function(
      grid, [gamma](double, double p) { return trivial_H(gamma, p); }, Parity::Even);
}

Field2D null_mode_field(const GridPtr& grid, double gamma) {
  return Field2D::from_function(
      grid, [gamma](double q, double p) { return null_mode(gamma, q, p); }, Parity::Even);
}

Field2D particular_field(const GridPtr& grid, const ModelParams& params) {
  return Field2D::from_function(
      grid, [&params](double q, double p) { return particular_solution(params, q, p); },
      Parity::Even);
}

HeightDerivatives height_derivatives(const Field2D& h, double gamma) {
  const auto& g = *h.grid();
  const Field2D w = h - trivial_height(h.grid(), gamma);
  const Eigen::RowVectorXd E = column_E(g, gamma);

  HeightDerivatives d{h, d_q(w), d_p(w), d_qq(w), d_pp(w), d_qp(w)};
  d.u.values().array() += 1.0;
  d.hp.values().rowwise() += gamma * E;
  d.hpp.values().rowwise() += gamma * gamma * E;
  d.u.set_parity(h.parity());
  return d;
}

OperatorPair apply_linearized_trivial(const ModelParams& params, double alpha, const Field2D& f) {
  params.validate();
  const auto& g = *f.grid();
  const double gam = params.gamma;
  const Eigen::RowVectorXd E = column_E(g, gam);
  const Eigen::RowVectorXd E2 = E.array().square();

  const Field2D fp = d_p(f), fpp = d_pp(f), fqq = d_qq(f);
  Eigen::MatrixXd in = fpp.values() - 2.0 * gam * fp.values() + gam * gam * f.values() +
                       gam * gam * fqq.values();
  in.array().rowwise() *= E2.array();

  const double X = std::exp(gam);
  const double b = beta(params, alpha);
  const Eigen::VectorXd top =
      2.0 * X * ((params.p0sq / gam) * trace_top(fp) - b * trace_top(f));
  return {Field2D(f.grid(), std::move(in), f.parity()), top};
}

OperatorPair apply_linearized_general(const ModelParams& params, double alpha, const Field2D& h,
                                      const Field2D& f) {
  params.validate();
  const double P = params.p0sq;
  const double lam = lambda_of(params, alpha);
  const auto d = height_derivatives(h, params.gamma);
  const Field2D fq = d_q(f), fp = d_p(f), fqq = d_qq(f), fpp = d_pp(f), fqp = d_qp(f);

  const auto& u = d.u.values().array();
  const auto& hq = d.hq.values().array();
  const auto& hp = d.hp.values().array();
  const auto& hqq = d.hqq.values().array();
  const auto& hpp = d.hpp.values().array();
  const auto& hqp = d.hqp.values().array();
  const auto& F = f.values().array();

  Eigen::MatrixXd in = (fqq.values().array() * hp.square() +
                        2.0 * hqq * hp * fp.values().array() -
                        2.0 * (fq.values().array() * hp * hqp + hq * fp.values().array() * hqp +
                               hq * hp * fqp.values().array()) +
                        fpp.values().array() * hq.square() + 2.0 * hpp * hq * fq.values().array() -
                        F * hp.square() - 2.0 * u * hp * fp.values().array() + 2.0 * u * F * hpp +
                        u.square() * fpp.values().array())
                           .matrix();

  const Eigen::ArrayXd ut = trace_top(d.u).array(), hpt = trace_top(d.hp).array(),
                       hqt = trace_top(d.hq).array();
  const Eigen::ArrayXd ft = trace_top(f).array(), fpt = trace_top(fp).array(),
                       fqt = trace_top(fq).array();
  const Eigen::ArrayXd A = 2.0 * lam + ut.square() - 2.0 * alpha * ut;
  const Eigen::VectorXd top =
      (2.0 * ut * ft * hpt.square() * A + 2.0 * ut.square() * hpt * fpt * A +
       ut.square() * hpt.square() * (2.0 * ut - 2.0 * alpha) * ft - 2.0 * P * hqt * fqt -
       2.0 * P * ut * ft)
          .matrix();
  return {Field2D(f.grid(), std::move(in), Parity::None), top};
}

void OdeEigenProblem::validate() const {
  params.validate();
  if (k < 0) throw DomainError("wavenumber must be nonnegative");
  if (np < 4) throw DomainError("np must be at least 4");
  if (!(alpha > alpha_s(params))) throw DomainError("alpha must exceed alpha_s");
}

namespace {

struct ReducedMode {
  Eigen::MatrixXd A;       // interior operator after eliminating both ends
  Eigen::RowVectorXd top;  // M(0) in terms of the interior values
};

ReducedMode reduce_mode(const OdeEigenProblem& prob) {
  prob.validate();
  const Grid g(2, prob.np);
  const int N = prob.np - 1, n = N - 1;
  const double gam = prob.params.gamma, P = prob.params.p0sq;
  const double kk = static_cast<double>(prob.k) * prob.k;
  const Eigen::RowVectorXd E = column_E(g, gam);

  Eigen::MatrixXd L = g.Dpp() - 2.0 * gam * g.Dp();
  L.diagonal().array() += gam * gam * (1.0 - kk);
  for (int j = 0; j <= N; ++j) L.row(j) *= E(j) * E(j);

  // Robin row (P/gamma) M'(0) - beta M(0) = 0 solved for M(0); M(-1) = 0.
  const double b = beta(prob.params, prob.alpha);
  const double d0 = (P / gam) * g.Dp()(0, 0) - b;
  if (d0 == 0.0) throw NumericalError("top boundary row is singular");
  const Eigen::RowVectorXd c = -(P / gam) * g.Dp().row(0).segment(1, n) / d0;

  ReducedMode r;
  r.A = L.block(1, 1, n, n) + L.col(0).segment(1, n) * c;
  r.top = c;
  return r;
}

}  // namespace

Eigen::VectorXd ode_eigs(const OdeEigenProblem& prob) {
  const auto r = reduce_mode(prob);
  Eigen::EigenSolver<Eigen::MatrixXd> es(r.A, false);
  if (es.info() != Eigen::Success) throw NumericalError("mode eigenproblem did not converge");
  const Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::VectorXd out(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > 1e-10 * std::max(1.0, std::abs(ev(i))))
      throw NumericalError("non-real mode eigenvalue; increase np");
    out(i) = ev(i).real();
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd ode_principal_mode(const OdeEigenProblem& prob) {
  const auto r = reduce_mode(prob);
  Eigen::EigenSolver<Eigen::MatrixXd> es(r.A, true);
  if (es.info() != Eigen::Success) throw NumericalError("mode eigenproblem did not converge");
  Eigen::Index imax = 0;
  es.eigenvalues().real().maxCoeff(&imax);
  const Eigen::VectorXd v = es.eigenvectors().col(imax).real();
  const int n = static_cast<int>(v.size());
  Eigen::VectorXd M(n + 2);
  M(0) = r.top.dot(v);
  M.segment(1, n) = v;
  M(n + 1) = 0.0;
  const Eigen::Index jmax = [&] {
    Eigen::Index j;
    M.cwiseAbs().maxCoeff(&j);
    return j;
  }();
  return M / M(jmax);
}

double sigma1(const ModelParams& params, double alpha, int np) {
  return ode_eigs({1, params, alpha, np}).maxCoeff();
}

double find_alpha_c_numeric(const ModelParams& params, std::pair<double, double> bracket, int np) {
  params.validate();
  // With no flux the top row reduces to beta M(0) = 0, which loses rank
  // exactly where beta vanishes.
  if (params.p0sq == 0.0) {
    const double a0 = std::exp(params.gamma);
    if (!(bracket.first <= a0 && a0 <= bracket.second))
      throw BracketError("bracket does not contain the critical value");
    return a0;
  }
  auto f = [&](double a) { return sigma1(params, a, np); };
  const double fa = f(bracket.first), fb = f(bracket.second);
  if (fa == 0.0) return bracket.first;
  if (fb == 0.0) return bracket.second;
  if ((fa > 0.0) == (fb > 0.0)) throw BracketError("sigma1 does not change sign over the bracket");
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      f, bracket.first, bracket.second, fa, fb,
      [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(a)); },
      iters);
  if (iters >= 200) throw ConvergenceError("alpha_c root search did not converge");
  return 0.5 * (lo + hi);
}

double rayleigh_sigma1(const ModelParams& params, double alpha, const Eigen::VectorXd& testM) {
  params.validate();
  if (!(params.p0sq > 0.0)) throw DomainError("Rayleigh quotient requires p0sq > 0");
  const int np = static_cast<int>(testM.size());
  const Grid g(2, np);
  const double gam = params.gamma;
  const Eigen::RowVectorXd E = column_E(g, gam);
  const Eigen::VectorXd Mp = g.Dp() * testM;
  const Eigen::VectorXd e2 = E.array().pow(-2.0).transpose();
  const Eigen::VectorXd e4 = E.array().pow(-4.0).transpose();
  const double num = -beta(params, alpha) * gam * std::exp(-2.0 * gam) * testM(0) * testM(0) /
                         params.p0sq +
                     g.integrate_p(e2.cwiseProduct(Mp.cwiseAbs2()));
  const double den = g.integrate_p(e4.cwiseProduct(testM.cwiseAbs2()));
  if (!(den > 0.0)) throw DomainError("test function vanishes identically");
  return num / den;
}

double rayleigh_bound_trivial(const ModelParams& params, double alpha) {
  params.validate();
  if (!(params.p0sq > 0.0)) throw DomainError("Rayleigh quotient requires p0sq > 0");
  const double g = params.gamma, X = std::exp(g);
  const double den = (-std::expm1(-2.0 * g) / 2.0 + 2.0 * std::expm1(-3.0 * g) / 3.0 -
                      std::expm1(-4.0 * g) / 4.0) /
                     g;
  const double em1 = std::expm1(g);
  return g * g * (g * X * (X - alpha) * em1 * em1 / params.p0sq + 1.0) / den;
}

Spectrum spectrum(const ModelParams& params, double alpha, int kmax, int np,
                  double crossing_tol) {
  if (kmax < 1) throw DomainError("kmax must be at least 1");
  Spectrum s;
  s.alpha = alpha;
  s.kmax = kmax;
  for (int k = 0; k <= kmax; ++k) {
    Eigen::VectorXd ev = ode_eigs({k, params, alpha, np});
    for (double v : ev) {
      if (std::abs(v) < crossing_tol)
        throw NumericalError("alpha is at an eigenvalue crossing (k = " + std::to_string(k) + ")");
      if (v > 0.0) ++s.morse_index;
    }
    s.per_k.push_back(std::move(ev));
  }
  if (s.per_k.back().maxCoeff() > 0.0)
    throw NumericalError("kmax too small: positive eigenvalue at k = kmax");
  return s;
}

int morse_index(const ModelParams& params, double alpha, int kmax, int np) {
  return spectrum(params, alpha, kmax, np).morse_index;
}

std::string to_json(const Spectrum& s) {
  nlohmann::json j;
  j["alpha"] = s.alpha;
  j["kmax"] = s.kmax;
  j["morse_index"] = s.morse_index;
  nlohmann::json per = nlohmann::json::array();
  for (std::size_t k = 0; k < s.per_k.size(); ++k)
    per.push_back({{"k", k},
                   {"eigenvalues", std::vector<double>(s.per_k[k].begin(), s.per_k[k].end())}});
  j["per_k"] = std::move(per);
  return j.dump();
}

Spectrum spectrum_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Spectrum s;
    s.alpha = j.at("alpha").get<double>();
    s.kmax = j.at("kmax").get<int>();
    s.morse_index = j.at("morse_index").get<int>();
    for (const auto& e : j.at("per_k")) {
      const auto v = e.at("eigenvalues").get<std::vector<double>>();
      s.per_k.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<int>(v.size())));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("spectrum JSON: ") + e.what());
  }
}

namespace {

struct OrthoParts {
  double interior, boundary, interior_abs, boundary_abs;
};

OrthoParts ortho_parts(const ModelParams& params, const Field2D& u, const Eigen::VectorXd& b) {
  params.validate();
  if (!(params.p0sq > 0.0)) throw DomainError("orthogonality condition requires p0sq > 0");
  const auto& g = *u.grid();
  if (b.size() != g.nq()) throw DomainError("top data does not match the grid");
  const double gam = params.gamma, X = std::exp(gam);
  const Field2D hs = null_mode_field(u.grid(), gam);
  Eigen::MatrixXd w = hs.values();
  w.array().rowwise() *= column_E(g, gam).array().pow(-4.0);
  const Eigen::MatrixXd prod = u.values().cwiseProduct(w);
  const Field2D f(u.grid(), prod), fa(u.grid(), prod.cwiseAbs());
  const Eigen::VectorXd t = (0.5 * gam / (X * X * X * params.p0sq)) * trace_top(hs).cwiseProduct(b);
  return {integrate(f), integrate_top(g, t), integrate(fa), integrate_top(g, t.cwiseAbs())};
}

}  // namespace

double orthogonality_residual(const ModelParams& params, const Field2D& u,
                              const Eigen::VectorXd& b) {
  const auto o = ortho_parts(params, u, b);
  return o.interior - o.boundary;
}

double orthogonality_scale(const ModelParams& params, const Field2D& u, const Eigen::VectorXd& b) {
  const auto o = ortho_parts(params, u, b);
  return o.interior_abs + o.boundary_abs;
}

Eigen::MatrixXd stacked_operator(const ModelParams& params, double alpha, const GridPtr& grid) {
  params.validate();
  const auto& g = *grid;
  const int hq = g.nq() / 2 + 1, N = g.np() - 1;
  const double gam = params.gamma, X = std::exp(gam), P = params.p0sq;
  const double b = beta(params, alpha);
  const Eigen::RowVectorXd E = column_E(g, gam);
  const Eigen::MatrixXd Dqq = fold_even(g.Dqq());
  Eigen::MatrixXd Lp = g.Dpp() - 2.0 * gam * g.Dp();
  Lp.diagonal().array() += gam * gam;

  const int n = hq * N;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  auto idx = [N](int i, int j) { return i * N + j; };
  for (int i = 0; i < hq; ++i) {
    for (int l = 0; l < N; ++l) A(idx(i, 0), idx(i, l)) = 2.0 * X * (P / gam) * g.Dp()(0, l);
    A(idx(i, 0), idx(i, 0)) -= 2.0 * X * b;
    for (int j = 1; j < N; ++j) {
      const double e2 = E(j) * E(j);
      for (int l = 0; l < N; ++l) A(idx(i, j), idx(i, l)) = e2 * Lp(j, l);
      for (int m = 0; m < hq; ++m) A(idx(i, j), idx(m, j)) += e2 * gam * gam * Dqq(i, m);
    }
  }
  return A;
}

int near_null_count(const Eigen::MatrixXd& op, double rel_tol, Eigen::VectorXd* singular_values) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(op);
  const Eigen::VectorXd s = svd.singularValues();
  const double thr = rel_tol * s(0);
  const int count = static_cast<int>((s.array() < thr).count());
  if (singular_values) *singular_values = s;
  return count;
}

ResidualCheck particular_solution_residual(const ModelParams& params, const GridPtr& grid) {
  const double ac = alpha_c(params);
  const double gam = params.gamma, X = std::exp(gam);
  const Field2D f = particular_field(grid, params);
  const auto op = apply_linearized_trivial(params, ac, f);
  const Field2D rhs = Field2D::from_function(
      grid, [&](double q, double p) { return second_order_interior_rhs(gam, q, p); });
  Eigen::VectorXd top_rhs(grid->nq());
  for (int i = 0; i < grid->nq(); ++i) top_rhs(i) = second_order_top_rhs(params, grid->q()(i));

  // Scales are the summed magnitudes of the terms of each equation.
  const Field2D fp = d_p(f), fpp = d_pp(f), fqq = d_qq(f);
  Eigen::MatrixXd terms = fpp.values().cwiseAbs() + 2.0 * gam * fp.values().cwiseAbs() +
                          gam * gam * (f.values().cwiseAbs() + fqq.values().cwiseAbs());
  terms.array().rowwise() *= column_E(*grid, gam).array().square();
  terms += rhs.values().cwiseAbs();
  const Eigen::VectorXd top_terms =
      2.0 * X * ((params.p0sq / gam) * trace_top(fp).cwiseAbs() +
                 std::abs(beta(params, ac)) * trace_top(f).cwiseAbs()) +
      top_rhs.cwiseAbs();

  ResidualCheck r;
  r.interior = (op.interior.values() - rhs.values()).cwiseAbs().maxCoeff();
  r.top = (op.top - top_rhs).cwiseAbs().maxCoeff();
  r.interior_scale = terms.maxCoeff();
  r.top_scale = top_terms.maxCoeff();
  return r;
}

ResidualCheck null_mode_residual(const ModelParams& params, const GridPtr& grid) {
  const Field2D f = null_mode_field(grid, params.gamma);
  const auto op = apply_linearized_trivial(params, alpha_c(params), f);
  ResidualCheck r;
  r.interior = op.interior.max_abs();
  r.top = op.top.cwiseAbs().maxCoeff();
  r.interior_scale = r.top_scale = f.max_abs();
  return r;
}

}  // namespace vortwave
