// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <tuple>

#include "vortwave/cli/commands.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/linops.hpp"
#include "vortwave/nonlinear.hpp"
#include "vortwave/reconstruct.hpp"

namespace vortwave::cli {

namespace {

struct Example {
  const char* name;
  double gamma, lambda, p0sq, alpha_c;
};

constexpr Example kExamples[] = {{"Example 1", 0.2, 1.4, 0.00594402, 1.71615},
                                 {"Example 2", 0.3, 1.15, 0.00794367, 1.50893}};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

// Feasible points on a 5 x 5 (gamma, lambda) lattice.
std::vector<ModelParams> lattice() {
  std::vector<ModelParams> pts;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double g = 0.1 + 0.2 * i, l = 0.8 + 0.4 * j;
      try {
        const CriticalPair cp = solve_critical_pair(g, l);
        if (cp.p0sq > 0.0) pts.push_back({g, cp.p0sq});
      } catch (const InfeasibleError&) {
      }
    }
  return pts;
}

template <class F>
void check(std::vector<VerifyItem>& items, std::string name, F&& f) {
  VerifyItem it{std::move(name), false, ""};
  try {
    std::tie(it.pass, it.detail) = f();
  } catch (const std::exception& e) {
    it.detail = std::string("threw: ") + e.what();
  }
  items.push_back(std::move(it));
}

}  // namespace

std::vector<VerifyItem> run_verify(bool full, const VerifyHooks& hooks) {
  std::vector<VerifyItem> items;
  std::vector<ModelParams> pts = lattice();
  for (const auto& ex : kExamples) pts.push_back({ex.gamma, solve_critical_pair(ex.gamma, ex.lambda).p0sq});

  check(items, "determinant identity", [&] {
    double worst = 0.0;
    for (const auto& p : pts) {
      const double e2 = std::exp(2.0 * p.gamma);
      const double t = 2.0 * p.p0sq * e2;
      worst = std::max(worst, std::abs(beta(p, hooks.alpha_c(p)) * (1.0 - e2) + t) / t);
    }
    return std::pair{worst < 1e-12, "max rel " + fmt(worst)};
  });
  check(items, "beta(alpha_c) identity", [&] {
    double worst = 0.0;
    for (const auto& p : pts) {
      const double e2 = std::exp(2.0 * p.gamma);
      const double want = 2.0 * p.p0sq * e2 / (e2 - 1.0);
      worst = std::max(worst, std::abs(beta(p, hooks.alpha_c(p)) - want) / want);
    }
    return std::pair{worst < 1e-12, "max rel " + fmt(worst)};
  });
  check(items, "o1 + o2 = o_total", [&] {
    double worst = 0.0;
    for (const auto& p : pts) {
      const double o = o_total(p);
      worst = std::max(worst, std::abs(o1(p) + o2(p) - o) / std::max(1.0, std::abs(o)));
    }
    return std::pair{worst < 1e-10, "max rel " + fmt(worst)};
  });
  for (const auto& ex : kExamples) {
    check(items, std::string("critical pair ") + ex.name, [&] {
      const CriticalPair cp = solve_critical_pair(ex.gamma, ex.lambda);
      const double da = std::abs(hooks.alpha_c({ex.gamma, cp.p0sq}) - ex.alpha_c);
      const double dp = std::abs(cp.p0sq - ex.p0sq);
      return std::pair{da <= 1e-5 && dp <= 1e-6, "|d alpha_c| " + fmt(da) + ", |d p0sq| " + fmt(dp)};
    });
  }
  const GridPtr grid = make_grid(64, 32);
  for (const auto& ex : kExamples) {
    const ModelParams p{ex.gamma, solve_critical_pair(ex.gamma, ex.lambda).p0sq};
    check(items, std::string("trivial residual ") + ex.name, [&] {
      const Field2D H = trivial_height(grid, p.gamma);
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        const Residual r = residual_G(p, alpha_s(p) + 3.0 * (k + 0.5) / 20.0, H);
        worst = std::max(worst, r.norm / r.scale);
      }
      return std::pair{worst < 1e-11, "max rel " + fmt(worst)};
    });
    check(items, std::string("trivial reconstruction ") + ex.name, [&] {
      PhysicalFields f = stream_from_height(trivial_height(grid, p.gamma));
      velocities(f, p, alpha_c(p));
      double err = 0.0;
      for (int i = 0; i < f.R.rows(); ++i)
        for (int c = 0; c < f.R.cols(); ++c)
          err = std::max(err, std::abs(f.Psi(i, c) - (1.0 - std::log(f.R(i, c)) / p.gamma)));
      const BernoulliReport b = bernoulli_check(f, p);
      const Eigen::VectorXd flux = mass_flux(f);
      const double ferr = (flux.array() + 1.0).abs().maxCoeff();
      return std::pair{err < 1e-8 && ferr < 1e-9 && b.E_spread < 1e-9,
                       "psi " + fmt(err) + ", flux " + fmt(ferr) + ", E spread " + fmt(b.E_spread)};
    });
  }
  if (!full) return items;

  for (const auto& ex : kExamples) {
    const ModelParams p{ex.gamma, solve_critical_pair(ex.gamma, ex.lambda).p0sq};
    const double ac = alpha_c(p);
    const std::string tag = std::string(" ") + ex.name;
    check(items, "numeric alpha_c" + tag, [&] {
      const double an = find_alpha_c_numeric(p, {ac - 0.1, ac + 0.1});
      const double rel = std::abs(an - ac) / ac;
      return std::pair{rel < 1e-6, "rel " + fmt(rel)};
    });
    check(items, "mode signs at alpha_c" + tag, [&] {
      const double s0 = ode_eigs({0, p, ac, 32}).maxCoeff();
      const double s2 = ode_eigs({2, p, ac, 32}).maxCoeff();
      return std::pair{s0 > 0.0 && s2 < 0.0, "sigma0 " + fmt(s0) + ", max k=2 " + fmt(s2)};
    });
    check(items, "null mode residual" + tag, [&] {
      const ResidualCheck r = null_mode_residual(p, grid);
      const double worst = std::max(r.interior / r.interior_scale, r.top / r.top_scale);
      return std::pair{r.within(1e-8), "rel " + fmt(worst)};
    });
    check(items, "particular solution residual" + tag, [&] {
      const ResidualCheck r = particular_solution_residual(p, grid);
      const double worst = std::max(r.interior / r.interior_scale, r.top / r.top_scale);
      return std::pair{r.within(1e-8), "rel " + fmt(worst)};
    });
    check(items, "continuation direction" + tag, [&] {
      const Branch b = continue_branch(p, grid);
      const DirectionFit f = detect_direction(b.points, ac);
      const BifurcationClass c = classify(p);
      return std::pair{f.direction == c && f.rel_residual < 0.05,
                       std::string(to_string(f.direction)) + " vs " + std::string(to_string(c)) +
                           ", fit residual " + fmt(f.rel_residual)};
    });
    check(items, "reconstruction round trip" + tag, [&] {
      const NewtonResult r = solve_at_amplitude(p, grid, 0.01);
      PhysicalFields f = stream_from_height(r.state.h);
      velocities(f, p, r.state.alpha);
      const BernoulliReport b = bernoulli_check(f, p);
      const Eigen::VectorXd flux = mass_flux(f);
      const double fs = flux.maxCoeff() - flux.minCoeff();
      const double rt = round_trip_error(r.state.h);
      return std::pair{rt < 1e-6 && fs < 1e-7 && b.E_spread < 1e-5,
                       "round trip " + fmt(rt) + ", flux spread " + fmt(fs) + ", E spread " +
                           fmt(b.E_spread)};
    });
  }
  return items;
}

int cmd_verify(bool full, Format format, std::ostream& out, std::ostream& err) {
  const auto items = run_verify(full);
  const bool ok = std::all_of(items.begin(), items.end(), [](const auto& i) { return i.pass; });
  if (format == Format::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& i : items) arr.push_back({{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
    out << nlohmann::json{{"level", full ? "full" : "quick"}, {"pass", ok}, {"items", arr}}.dump(2)
        << '\n';
  } else {
    for (const auto& i : items)
      out << (i.pass ? "PASS " : "FAIL ") << i.name << ": " << i.detail << '\n';
  }
  if (!ok) err << "verify " << (full ? "full" : "quick") << " failed\n";
  return ok ? kOk : kFailed;
}

}  // namespace vortwave::cli
