// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include "vortwave/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <numbers>
#include <ostream>

#include "vortwave/errors.hpp"
#include "vortwave/linops.hpp"

namespace vortwave {

namespace {

// Unknown layout: half grid i in [0, nq/2], p index j in [0, N) with the bed
// dropped; index i * N + j, then alpha when it is free.
struct Layout {
  int nq, hq, N;
  int size() const { return hq * N; }
  int idx(int i, int j) const { return i * N + j; }
  // multiplicity of half-grid row m in the full grid
  double mult(int m) const { return (m > 0 && m < hq - 1) ? 2.0 : 1.0; }
};

Layout layout_of(const Grid& g) {
  if (g.nq() < 4) throw DomainError("Newton solve needs nq >= 4");
  return {g.nq(), g.nq() / 2 + 1, g.np() - 1};
}

Eigen::MatrixXd fold_even(const Eigen::MatrixXd& D, const Layout& L) {
  Eigen::MatrixXd F(L.hq, L.hq);
  for (int i = 0; i < L.hq; ++i)
    for (int m = 0; m < L.hq; ++m)
      F(i, m) = D(i, m) + ((m > 0 && m < L.hq - 1) ? D(i, L.nq - m) : 0.0);
  return F;
}

Eigen::VectorXd pack(const Field2D& h, const Layout& L) {
  Eigen::VectorXd x(L.size());
  for (int i = 0; i < L.hq; ++i)
    for (int j = 0; j < L.N; ++j) x(L.idx(i, j)) = h(i, j);
  return x;
}

Field2D unpack(const Eigen::VectorXd& x, const GridPtr& grid, const Layout& L) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(L.nq, L.N + 1);
  for (int i = 0; i < L.hq; ++i)
    for (int j = 0; j < L.N; ++j) v(i, j) = x(L.idx(i, j));
  for (int i = L.hq; i < L.nq; ++i) v.row(i) = v.row(L.nq - i);
  return Field2D(grid, std::move(v), Parity::Even);
}

double dlambda_dalpha(double gamma) { return std::exp(gamma); }

struct System {
  Eigen::VectorXd F;
  Residual res;
};

System evaluate(const ModelParams& params, double alpha, const Field2D& h, const Layout& L) {
  System s{Eigen::VectorXd(L.size()), residual_G(params, alpha, h)};
  for (int i = 0; i < L.hq; ++i) {
    s.F(L.idx(i, 0)) = s.res.g2(i);
    for (int j = 1; j < L.N; ++j) s.F(L.idx(i, j)) = s.res.g1(i, j);
  }
  return s;
}

Eigen::MatrixXd jacobian(const ModelParams& params, double alpha, const Field2D& h,
                         const Layout& L, bool with_alpha) {
  const auto& g = *h.grid();
  const double P = params.p0sq;
  const double lam = lambda_of(params, alpha);
  const auto d = height_derivatives(h, params.gamma);
  const Eigen::MatrixXd Dq = fold_even(g.Dq(), L), Dqq = fold_even(g.Dqq(), L);
  const Eigen::MatrixXd& Dp = g.Dp();
  const Eigen::MatrixXd& Dpp = g.Dpp();

  const int n = L.size() + (with_alpha ? 1 : 0);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < L.hq; ++i) {
    {
      const double u = d.u(i, 0), hp = d.hp(i, 0), hq = d.hq(i, 0);
      const double A = 2.0 * lam + u * u - 2.0 * alpha * u;
      const double t0 = 2.0 * u * hp * hp * A + u * u * hp * hp * (2.0 * u - 2.0 * alpha) -
                        2.0 * P * u;
      const double tp = 2.0 * u * u * hp * A, tq = -2.0 * P * hq;
      const int r = L.idx(i, 0);
      for (int l = 0; l < L.N; ++l) J(r, L.idx(i, l)) += tp * Dp(0, l);
      J(r, r) += t0;
      for (int m = 0; m < L.hq; ++m) J(r, L.idx(m, 0)) += tq * Dq(i, m);
      if (with_alpha) J(r, n - 1) = u * u * hp * hp * (2.0 * dlambda_dalpha(params.gamma) - 2.0 * u);
    }
    for (int j = 1; j < L.N; ++j) {
      const double u = d.u(i, j), hp = d.hp(i, j), hq = d.hq(i, j), hqq = d.hqq(i, j),
                   hpp = d.hpp(i, j), hqp = d.hqp(i, j);
      const double cqq = hp * hp, cq = -2.0 * hp * hqp + 2.0 * hpp * hq,
                   cp = 2.0 * hqq * hp - 2.0 * hq * hqp - 2.0 * u * hp, cqp = -2.0 * hq * hp,
                   cpp = hq * hq + u * u, c0 = -hp * hp + 2.0 * u * hpp;
      const int r = L.idx(i, j);
      for (int l = 0; l < L.N; ++l) J(r, L.idx(i, l)) += cp * Dp(j, l) + cpp * Dpp(j, l);
      J(r, r) += c0;
      for (int m = 0; m < L.hq; ++m) J(r, L.idx(m, j)) += cq * Dq(i, m) + cqq * Dqq(i, m);
      if (cqp != 0.0)
        for (int m = 0; m < L.hq; ++m) {
          const double a = cqp * Dq(i, m);
          if (a == 0.0) continue;
          for (int l = 0; l < L.N; ++l) J(r, L.idx(m, l)) += a * Dp(j, l);
        }
    }
  }
  return J;
}

// Linear functional x -> sum w_k x_k reproducing amplitude() on even states.
Eigen::VectorXd amplitude_row(const Grid& g, const Layout& L) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(L.size());
  for (int m = 0; m < L.hq; ++m) w(L.idx(m, 0)) = 2.0 / g.nq() * L.mult(m) * std::cos(g.q()(m));
  return w;
}

// Weights of state_dot on the h unknowns.
Eigen::VectorXd dot_weights(const Grid& g, const Layout& L) {
  Eigen::VectorXd w(L.size());
  for (int m = 0; m < L.hq; ++m)
    for (int l = 0; l < L.N; ++l) w(L.idx(m, l)) = g.wq() * L.mult(m) * g.wp()(l);
  return w;
}

double interior_max(const Field2D& f) {
  const int N = f.grid()->np() - 1;
  return N > 1 ? f.values().middleCols(1, N - 1).cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

void check_admissible(const Field2D& h, double gamma, double delta) {
  if (!h.grid()) throw InadmissibleError("state without grid");
  if (!h.finite()) throw InadmissibleError("non-finite height field");
  const auto& g = *h.grid();
  if (trace_bed(h).cwiseAbs().maxCoeff() != 0.0)
    throw InadmissibleError("height field does not vanish on the bed");
  const auto d = height_derivatives(h, gamma);
  const double m = d.u.values().cwiseProduct(d.hp.values()).minCoeff();
  if (!(m > delta)) throw InadmissibleError("(h+1) h_p is not positive everywhere");
  (void)g;
}

Residual residual_G(const ModelParams& params, double alpha, const Field2D& h) {
  params.validate();
  check_admissible(h, params.gamma);
  const double P = params.p0sq;
  const double lam = lambda_of(params, alpha);
  const auto d = height_derivatives(h, params.gamma);
  const auto u = d.u.values().array(), hq = d.hq.values().array(), hp = d.hp.values().array(),
             hqq = d.hqq.values().array(), hpp = d.hpp.values().array(),
             hqp = d.hqp.values().array();

  const Eigen::ArrayXXd t1 = hqq * hp.square(), t2 = 2.0 * hq * hp * hqp, t3 = hpp * hq.square(),
                        t4 = u * hp.square(), t5 = u.square() * hpp;
  Residual r;
  r.g1 = Field2D(h.grid(), (t1 - t2 + t3 - t4 + t5).matrix(), Parity::Even);
  const Field2D terms1(h.grid(),
                       (t1.abs() + t2.abs() + t3.abs() + t4.abs() + t5.abs()).matrix());

  const Eigen::ArrayXd ut = trace_top(d.u).array(), hpt = trace_top(d.hp).array(),
                       hqt = trace_top(d.hq).array();
  const Eigen::ArrayXd a = ut.square() * hpt.square();
  const Eigen::ArrayXd s1 = 2.0 * lam * a, s2 = a * ut.square(), s3 = 2.0 * alpha * a * ut,
                       s4 = P * hqt.square(), s5 = P * ut.square();
  r.g2 = (s1 + s2 - s3 - s4 - s5).matrix();
  const Eigen::ArrayXd terms2 = s1.abs() + s2 + s3.abs() + s4 + s5;

  r.norm = std::max(interior_max(r.g1), r.g2.cwiseAbs().maxCoeff());
  r.scale = std::max(interior_max(terms1), terms2.maxCoeff());
  return r;
}

double amplitude(const Field2D& h, double gamma) {
  return top_cos_coefficient(h - trivial_height(h.grid(), gamma), 1);
}

double state_dot(const StateVector& a, const StateVector& b) {
  return integrate(Field2D(a.h.grid(), a.h.values().cwiseProduct(b.h.values()))) +
         a.alpha * b.alpha;
}

NewtonResult newton_solve(const ModelParams& params, const StateVector& initial,
                          const Constraint& constraint, const NewtonOptions& opts) {
  params.validate();
  const GridPtr grid = initial.h.grid();
  const auto& g = *grid;
  const Layout L = layout_of(g);
  const bool free_alpha = constraint.kind != Constraint::Kind::FixedAlpha;
  const int n = L.size() + (free_alpha ? 1 : 0);

  Eigen::VectorXd crow;  // constraint row over h unknowns
  double calpha = 0.0, crhs = 0.0;
  if (constraint.kind == Constraint::Kind::FixedAmplitude) {
    crow = amplitude_row(g, L);
    crhs = constraint.value;
  } else if (constraint.kind == Constraint::Kind::Arclength) {
    if (!constraint.base || !constraint.tangent)
      throw DomainError("arclength constraint needs a base point and a tangent");
    const Eigen::VectorXd w = dot_weights(g, L);
    crow = w.cwiseProduct(pack(constraint.tangent->h, L));
    calpha = constraint.tangent->alpha;
    crhs = constraint.value + crow.dot(pack(constraint.base->h, L)) +
           calpha * constraint.base->alpha;
  }

  StateVector x{project_even(initial.h), initial.alpha};
  x.h.values().col(g.bed()).setZero();
  check_admissible(x.h, params.gamma);

  auto constraint_value = [&](const StateVector& s) {
    return free_alpha ? crow.dot(pack(s.h, L)) + calpha * s.alpha - crhs : 0.0;
  };

  System sys = evaluate(params, x.alpha, x.h, L);
  double cval = constraint_value(x);
  double prev = sys.res.norm;
  int growth = 0;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;
  for (int it = 0;; ++it) {
    const bool cons_ok = std::abs(cval) <= 1e-13 * std::max(1.0, std::abs(crhs));
    if (sys.res.norm <= opts.tol * sys.res.scale && cons_ok)
      return {x, it, sys.res.norm, sys.res.scale};
    if (it == opts.max_iter)
      throw ConvergenceError("Newton did not converge in " + std::to_string(opts.max_iter) +
                             " iterations");

    if (!lu) {
      Eigen::MatrixXd J = jacobian(params, x.alpha, x.h, L, free_alpha);
      if (free_alpha) {
        J.row(n - 1).head(L.size()) = crow.transpose();
        J(n - 1, n - 1) = calpha;
      }
      lu.emplace(J);
    }
    Eigen::VectorXd rhs(n);
    rhs.head(L.size()) = -sys.F;
    if (free_alpha) rhs(n - 1) = -cval;
    const Eigen::VectorXd dx = lu->solve(rhs);
    if (!dx.allFinite()) throw ConvergenceError("singular Newton system");

    const Eigen::VectorXd x0 = pack(x.h, L);
    const bool small_step =
        dx.head(L.size()).lpNorm<Eigen::Infinity>() <= opts.step_tol * std::max(1.0, x0.lpNorm<Eigen::Infinity>());
    double t = 1.0;
    for (int halving = 0;; ++halving) {
      StateVector trial{unpack(x0 + t * dx.head(L.size()), grid, L),
                        x.alpha + (free_alpha ? t * dx(n - 1) : 0.0)};
      try {
        check_admissible(trial.h, params.gamma);
        if (!(trial.alpha > alpha_s(params))) throw InadmissibleError("alpha below alpha_s");
        x = std::move(trial);
        break;
      } catch (const InadmissibleError&) {
        if (halving == opts.max_halvings)
          throw InadmissibleError("Newton iterate inadmissible after step halving");
        t *= 0.5;
      }
    }
    sys = evaluate(params, x.alpha, x.h, L);
    cval = constraint_value(x);
    if (small_step && t == 1.0 && sys.res.norm <= opts.stall_factor * opts.tol * sys.res.scale &&
        std::abs(cval) <= 1e-13 * std::max(1.0, std::abs(crhs)))
      return {x, it + 1, sys.res.norm, sys.res.scale};
    if (t < 1.0 || !(sys.res.norm <= opts.reuse_ratio * prev)) lu.reset();
    growth = sys.res.norm > prev ? growth + 1 : 0;
    if (growth >= opts.divergence_window) throw ConvergenceError("Newton residual is growing");
    prev = sys.res.norm;
  }
}

NewtonResult solve_at_amplitude(const ModelParams& params, const GridPtr& grid, double amplitude,
                                double max_step, const NewtonOptions& opts) {
  params.validate();
  if (!(max_step > 0.0)) throw DomainError("max_step must be positive");
  const Field2D H = trivial_height(grid, params.gamma);
  const Field2D hs = null_mode_field(grid, params.gamma);
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(amplitude) / max_step)));

  StateVector older{H, alpha_c(params)};
  NewtonResult r{older, 0, 0.0, 0.0};
  for (int k = 1; k <= n; ++k) {
    const StateVector guess =
        k == 1 ? StateVector{H + (amplitude / n / top_cos_coefficient(hs, 1)) * hs, older.alpha}
               : StateVector{2.0 * r.state.h - older.h, 2.0 * r.state.alpha - older.alpha};
    StateVector last = r.state;
    r = newton_solve(params, guess, Constraint::fixed_amplitude(amplitude * k / n), opts);
    older = std::move(last);
  }
  return r;
}

Branch continue_branch(const ModelParams& params, const GridPtr& grid,
                       const ContinuationConfig& config) {
  params.validate();
  if (!(params.p0sq > 0.0)) throw DomainError("continuation requires p0sq > 0");
  if (config.direction != 1 && config.direction != -1)
    throw DomainError("direction must be +1 or -1");
  const double gam = params.gamma;
  const double ac = alpha_c(params);

  StateVector x0{trivial_height(grid, gam), ac};
  Field2D hs = null_mode_field(grid, gam);
  StateVector t{hs, 0.0};
  t.h *= config.direction / std::sqrt(state_dot(t, t));

  Branch b;
  double ds = config.ds;
  if (!(ds > 0.0)) {
    const double o = std::abs(o_total(params));
    const double smax = o > 0.0 ? std::sqrt(2.0 * config.window / o) : 0.05;
    ds = std::min(0.05, smax / std::max(1, config.steps));
  }
  const double ds_max = ds;
  const double ds_min = config.ds_min > 0.0 ? config.ds_min : ds / 1024.0;
  b.ds = ds;
  b.points.push_back({ac, x0.h, 0.0, 0.0, residual_G(params, ac, x0.h).norm});

  StateVector prev = x0;
  double s = 0.0;
  int easy = 0;
  while (static_cast<int>(b.points.size()) <= config.steps) {
    StateVector pred{prev.h + ds * t.h, prev.alpha + ds * t.alpha};
    NewtonResult r;
    try {
      r = newton_solve(params, pred, Constraint::arclength(prev, t, ds), config.newton);
    } catch (const std::runtime_error& e) {
      ds *= 0.5;
      easy = 0;
      if (ds < ds_min) {
        b.truncated = true;
        b.message = std::string("step size below floor: ") + e.what();
        break;
      }
      continue;
    }
    s += ds;
    b.points.push_back({r.state.alpha, r.state.h, amplitude(r.state.h, gam), s, r.residual_norm});

    StateVector sec{r.state.h - prev.h, r.state.alpha - prev.alpha};
    const double nrm = std::sqrt(state_dot(sec, sec));
    t = {sec.h * (1.0 / nrm), sec.alpha / nrm};
    prev = std::move(r.state);
    easy = r.iterations <= 3 ? easy + 1 : 0;
    if (easy >= 3 && ds < ds_max) {
      ds = std::min(2.0 * ds, ds_max);
      easy = 0;
    }
  }
  return b;
}

DirectionFit detect_direction(const std::vector<BranchPoint>& branch, double alpha_c,
                              double min_amplitude, int max_points) {
  std::vector<const BranchPoint*> use;
  for (const auto& p : branch) {
    if (std::abs(p.amplitude) > min_amplitude) use.push_back(&p);
    if (static_cast<int>(use.size()) == max_points) break;
  }
  if (use.size() < 5) throw DomainError("direction fit needs at least 5 nontrivial points");
  double num = 0.0, den = 0.0, dd = 0.0, amax = 0.0;
  for (const auto* p : use) {
    const double a2 = p->amplitude * p->amplitude, d = p->alpha - alpha_c;
    num += d * a2;
    den += a2 * a2;
    dd += d * d;
    amax = std::max(amax, a2);
  }
  DirectionFit f;
  f.points = static_cast<int>(use.size());
  f.coefficient = num / den;
  double err = 0.0;
  for (const auto* p : use) {
    const double e = p->alpha - alpha_c - f.coefficient * p->amplitude * p->amplitude;
    err += e * e;
  }
  f.rel_residual = dd > 0.0 ? std::sqrt(err / dd) : 0.0;
  if (std::abs(f.coefficient) * amax <= 1e-12 * std::max(1.0, std::abs(alpha_c)))
    f.direction = BifurcationClass::Degenerate;
  else
    f.direction = f.coefficient > 0.0 ? BifurcationClass::Supercritical
                                      : BifurcationClass::Subcritical;
  return f;
}

void write_branch_csv(std::ostream& os, const Branch& b) {
  os << "alpha,amplitude,arclength,residual_norm\n" << std::setprecision(17);
  for (const auto& p : b.points)
    os << p.alpha << ',' << p.amplitude << ',' << p.arclength << ',' << p.residual_norm << '\n';
}

std::string branch_to_json(const Branch& b, bool include_fields) {
  nlohmann::json j;
  j["truncated"] = b.truncated;
  j["message"] = b.message;
  j["ds"] = b.ds;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : b.points) {
    nlohmann::json e{{"alpha", p.alpha},
                     {"amplitude", p.amplitude},
                     {"arclength", p.arclength},
                     {"residual_norm", p.residual_norm}};
    if (include_fields) e["h"] = nlohmann::json::parse(to_json(p.h));
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  return j.dump();
}

Branch branch_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Branch b;
    b.truncated = j.at("truncated").get<bool>();
    b.message = j.at("message").get<std::string>();
    b.ds = j.at("ds").get<double>();
    for (const auto& e : j.at("points")) {
      BranchPoint p;
      p.alpha = e.at("alpha").get<double>();
      p.amplitude = e.at("amplitude").get<double>();
      p.arclength = e.at("arclength").get<double>();
      p.residual_norm = e.at("residual_norm").get<double>();
      if (e.contains("h")) p.h = field_from_json(e.at("h").dump());
      b.points.push_back(std::move(p));
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("branch JSON: ") + e.what());
  }
}

}  // namespace vortwave
