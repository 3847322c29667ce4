// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--nq N] [--np N]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "vortwave/cli/commands.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/linops.hpp"
#include "vortwave/nonlinear.hpp"
#include "vortwave/reconstruct.hpp"

using namespace vortwave;

namespace {

struct Example {
  const char* name;
  double gamma, lambda;
  double p0sq, alpha_c, o;
  BifurcationClass cls;
};

const Example kEx[] = {
    {"ex1", 0.2, 1.4, 0.00594402, 1.71615, 0.218807, BifurcationClass::Supercritical},
    {"ex2", 0.3, 1.15, 0.00794367, 1.50893, -0.150203, BifurcationClass::Subcritical}};

ModelParams params_of(const Example& e) {
  return {e.gamma, solve_critical_pair(e.gamma, e.lambda).p0sq};
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail_if(bool bad) { pass = pass && !bad; }
  Outcome& note(const std::string& s) {
    detail += (detail.empty() ? "" : "; ") + s;
    return *this;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fix(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

using Clock = std::chrono::steady_clock;

struct Runner {
  int failures = 0;
  void run(const char* label, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("threw: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0.0 && dt > limit_s) {
      o.pass = false;
      o.note("runtime over " + fix(limit_s, 1) + " s");
    }
    if (!o.pass) ++failures;
    std::cout << label << (o.pass ? " PASS " : " FAIL ") << fix(dt, 2) << " s  " << o.detail
              << std::endl;
  }
};

Outcome example_reproduction(const Example& e) {
  std::ostringstream out, err;
  const auto t0 = Clock::now();
  const int rc = cli::cmd_critical({e.gamma, e.lambda, std::nullopt}, cli::Format::Json, out, err);
  const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
  Outcome o;
  if (rc != cli::kOk) {
    o.pass = false;
    return o.note("exit " + std::to_string(rc) + ": " + err.str());
  }
  const auto j = nlohmann::json::parse(out.str());
  const double p0sq = j.at("p0sq").get<double>(), ac = j.at("alpha_c").get<double>();
  const double O = j.at("O").is_null() ? NAN : j.at("O").get<double>();
  const std::string cls = j.at("class").is_null() ? "undefined" : j.at("class").get<std::string>();
  o.fail_if(!(std::abs(p0sq - e.p0sq) <= 1e-6));
  o.fail_if(!(std::abs(ac - e.alpha_c) <= 1e-5));
  o.fail_if(!(std::abs(O - e.o) <= 1e-5));
  o.fail_if(cls != to_string(e.cls));
  o.fail_if(dt >= 0.1);
  o.note("p0sq " + fix(p0sq, 8) + " (want " + fix(e.p0sq, 8) + ")");
  o.note("alpha_c " + fix(ac) + " (want " + fix(e.alpha_c) + ")");
  o.note("O " + fix(O) + " (want " + fix(e.o) + ")");
  o.note("class " + cls + " (want " + std::string(to_string(e.cls)) + ")");
  o.note("expanded-formula bracket " + fix(j.at("O_printed").get<double>()));
  return o;
}

int parse_int(const char* s) {
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (!end || *end) {
    std::cerr << "not an integer: " << s << '\n';
    std::exit(2);
  }
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  int nq = 64, np = 32;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--nq" && i + 1 < argc) nq = parse_int(argv[++i]);
    else if (a == "--np" && i + 1 < argc) np = parse_int(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--nq N] [--np N]\n";
      return 2;
    }
  }
  const bool doubled = nq > 64 || np > 32;
  const GridPtr grid = make_grid(nq, np);
  std::cout << "resolution nq " << nq << ", np " << np << std::endl;
  Runner r;

  r.run("AC1", 0.0, [] { return example_reproduction(kEx[0]); });
  r.run("AC2", 0.0, [] { return example_reproduction(kEx[1]); });

  r.run("AC3", 5.0, [] {
    Outcome o;
    for (const auto& e : kEx) {
      const ModelParams p = params_of(e);
      const double ac = alpha_c(p);
      const double an = find_alpha_c_numeric(p, {ac - 0.1, ac + 0.1}, 32);
      const double rel = std::abs(an - ac) / ac;
      const double s0 = ode_eigs({0, p, ac, 32}).maxCoeff();
      const double s2 = ode_eigs({2, p, ac, 32}).maxCoeff();
      o.fail_if(!(rel < 1e-6 && s0 > 0.0 && s2 < 0.0));
      o.note(std::string(e.name) + " rel " + sci(rel) + ", sigma0 " + sci(s0) + ", max k=2 " + sci(s2));
    }
    return o;
  });

  r.run("AC4", 10.0, [&] {
    Outcome o;
    for (const auto& e : kEx) {
      const ModelParams p = params_of(e);
      const ResidualCheck nr = null_mode_residual(p, grid);
      const double rel = std::max(nr.interior, nr.top) / nr.interior_scale;
      Eigen::VectorXd sv;
      const int count = near_null_count(stacked_operator(p, alpha_c(p), grid), 1e-6, &sv);
      o.fail_if(!(rel < 1e-8 && count == 1));
      o.note(std::string(e.name) + " null residual " + sci(rel) + ", near-zero singular values " +
             std::to_string(count) + " (smallest " + sci(sv(sv.size() - 1) / sv(0)) + ", next " +
             sci(sv(sv.size() - 2) / sv(0)) + " of the norm)");
    }
    return o;
  });

  r.run("AC5", 5.0, [&] {
    Outcome o;
    for (const auto& e : kEx) {
      const ResidualCheck c = particular_solution_residual(params_of(e), grid);
      o.fail_if(!c.within(1e-8));
      o.note(std::string(e.name) + " interior " + sci(c.interior / c.interior_scale) + ", top " +
             sci(c.top / c.top_scale));
    }
    return o;
  });

  r.run("AC6", 1.0, [&] {
    Outcome o;
    for (const auto& e : kEx) {
      const ModelParams p = params_of(e);
      const Field2D H = trivial_height(grid, p.gamma);
      double worst = 0.0;
      for (int k = 0; k < 20; ++k) {
        const Residual res = residual_G(p, alpha_s(p) + 3.0 * (k + 0.5) / 20.0, H);
        worst = std::max(worst, res.norm / res.scale);
      }
      o.fail_if(!(worst < 1e-11));
      o.note(std::string(e.name) + " max rel " + sci(worst));
    }
    return o;
  });

  r.run("AC7", 0.0, [&] {
    Outcome o;
    for (const auto& e : kEx) {
      const ModelParams p = params_of(e);
      ContinuationConfig cfg;
      if (doubled) cfg.steps = 10;
      const auto t0 = Clock::now();
      const Branch b = continue_branch(p, grid, cfg);
      const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
      const int nontrivial = static_cast<int>(b.points.size()) - 1;
      const DirectionFit f = detect_direction(b.points, alpha_c(p));
      const BifurcationClass sign = classify(p);
      o.fail_if(!(nontrivial >= 10 && f.rel_residual < 0.05 && f.direction == sign && dt < 120.0));
      o.note(std::string(e.name) + " " + std::to_string(nontrivial) + " points, fit residual " +
             sci(f.rel_residual) + ", direction " + std::string(to_string(f.direction)) +
             ", sign(O) " + std::string(to_string(sign)) + ", " + fix(dt, 1) + " s");
    }
    return o;
  });

  r.run("AC8", 30.0, [&] {
    Outcome o;
    for (const auto& e : kEx) {
      const ModelParams p = params_of(e);
      const double ac = alpha_c(p);
      std::string counts;
      int jump0 = 0;
      bool stable = true;
      for (int kmax : {8, 10, 12}) {
        const int lo = morse_index(p, ac - 0.01, kmax, np), hi = morse_index(p, ac + 0.01, kmax, np);
        if (kmax == 8) jump0 = std::abs(hi - lo);
        stable = stable && std::abs(hi - lo) == jump0;
        counts += " kmax " + std::to_string(kmax) + ": " + std::to_string(lo) + " -> " + std::to_string(hi);
      }
      o.fail_if(!(jump0 == 1 && stable));
      o.note(std::string(e.name) + counts);
    }
    return o;
  });

  r.run("AC9", 30.0, [&] {
    Outcome o;
    const ModelParams p = params_of(kEx[0]);
    PhysicalFields t = stream_from_height(trivial_height(grid, p.gamma));
    velocities(t, p, alpha_c(p));
    const Eigen::VectorXd tf = mass_flux(t);
    const double te = bernoulli_check(t, p).E_spread, tfs = tf.maxCoeff() - tf.minCoeff();
    o.fail_if(!(te < 1e-9 && tfs < 1e-9));
    o.note("trivial E spread " + sci(te) + ", flux spread " + sci(tfs));
    try {
      const NewtonResult n = solve_at_amplitude(p, grid, 0.05);
      PhysicalFields f = stream_from_height(n.state.h);
      velocities(f, p, n.state.alpha);
      const Eigen::VectorXd fl = mass_flux(f);
      const double e = bernoulli_check(f, p).E_spread, fs = fl.maxCoeff() - fl.minCoeff();
      const double rt = round_trip_error(n.state.h);
      o.fail_if(!(e < 1e-5 && fs < 1e-7 && rt < 1e-6));
      o.note("amplitude 0.05 E spread " + sci(e) + ", flux spread " + sci(fs) + ", round trip " + sci(rt));
    } catch (const std::exception& ex) {
      o.pass = false;
      o.note(std::string("amplitude 0.05 not reached: ") + ex.what());
    }
    return o;
  });

  r.run("AC10", 1.0, [] {
    Outcome o;
    int n = 0;
    double wo = 0.0, wb = 0.0, wd = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double g = 0.05 + 0.9 * i / 19.0, l = 0.5 + 2.0 * j / 19.0;
        CriticalPair cp;
        try {
          cp = solve_critical_pair(g, l);
        } catch (const InfeasibleError&) {
          continue;
        }
        if (!(cp.p0sq > 0.0)) continue;
        ++n;
        const ModelParams p{g, cp.p0sq};
        const double ot = o_total(p);
        wo = std::max(wo, std::abs(o1(p) + o2(p) - ot) / std::max(1.0, std::abs(ot)));
        const double e2 = std::exp(2.0 * g), b = beta(p, cp.alpha_c);
        const double want = 2.0 * cp.p0sq * e2 / (e2 - 1.0);
        wb = std::max(wb, std::abs(b - want) / want);
        wd = std::max(wd, std::abs(b * (1.0 - e2) + 2.0 * cp.p0sq * e2) / (2.0 * cp.p0sq * e2));
      }
    o.fail_if(!(n > 0 && wo < 1e-10 && wb < 1e-12 && wd < 1e-12));
    o.note(std::to_string(n) + " feasible points, o-sum " + sci(wo) + ", beta " + sci(wb) +
           ", determinant " + sci(wd));
    return o;
  });

  r.run("AC11", 5.0, [] {
    Outcome o;
    const cli::RegionConfig cfg;
    const auto cells = cli::sweep_region(cfg);
    int feas = 0, sup = 0, sub = 0;
    for (const auto& c : cells) {
      feas += c.feasible;
      sup += c.cls == BifurcationClass::Supercritical;
      sub += c.cls == BifurcationClass::Subcritical;
    }
    const auto& c1 = cells[cli::nearest_cell(cfg, 0.2, 1.4)];
    const auto& c2 = cells[cli::nearest_cell(cfg, 0.3, 1.15)];
    const int comps = cli::boundary_components(cfg, cells);
    auto name = [](const cli::RegionCell& c) {
      return c.cls ? std::string(to_string(*c.cls)) : std::string(c.feasible ? "undefined" : "infeasible");
    };
    o.fail_if(!(c1.cls == BifurcationClass::Supercritical && c2.cls == BifurcationClass::Subcritical &&
                comps == 1));
    o.note("(0.2, 1.4) " + name(c1) + ", (0.3, 1.15) " + name(c2) + ", boundary components " +
           std::to_string(comps) + ", cells " + std::to_string(cells.size()) + " feasible " +
           std::to_string(feas) + " supercritical " + std::to_string(sup) + " subcritical " +
           std::to_string(sub));
    return o;
  });

  std::cout << (r.failures == 0 ? "all criteria pass" : std::to_string(r.failures) + " criteria fail")
            << std::endl;
  return r.failures == 0 ? 0 : 1;
}
