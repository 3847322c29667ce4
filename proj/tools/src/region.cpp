// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <thread>

#include "vortwave/cli/commands.hpp"
#include "vortwave/errors.hpp"

namespace vortwave::cli {

namespace {

double node(double lo, double hi, int n, int i) { return lo + (hi - lo) * i / (n - 1); }

const char* fill_of(const RegionCell& c) {
  if (!c.feasible) return "#d9d9d9";
  switch (*c.cls) {
    case BifurcationClass::Supercritical: return "#d62728";
    case BifurcationClass::Subcritical: return "#f2c500";
    case BifurcationClass::Degenerate: return "#555555";
  }
  return "#555555";
}

}  // namespace

void RegionConfig::validate() const {
  if (!(gamma_min > 0.0 && gamma_max < 1.0 && gamma_min < gamma_max))
    throw DomainError("gamma range must satisfy 0 < min < max < 1");
  if (!(lambda_min < lambda_max)) throw DomainError("lambda range is empty");
  if (n_gamma < 2 || n_lambda < 2) throw DomainError("resolution must be at least 2 per axis");
  if (jobs < 0) throw DomainError("jobs must be non-negative");
}

RegionCell evaluate_cell(double gamma, double lambda) {
  RegionCell c{gamma, lambda, false, {}, {}, {}, {}};
  CriticalPair cp;
  try {
    cp = solve_critical_pair(gamma, lambda);
  } catch (const InfeasibleError&) {
    return c;
  }
  c.feasible = true;
  c.alpha_c = cp.alpha_c;
  c.p0sq = cp.p0sq;
  if (cp.p0sq > 0.0) {
    c.o_total = o_total(ModelParams{gamma, cp.p0sq});
    c.cls = classify_value(*c.o_total);
  } else {
    c.cls = BifurcationClass::Degenerate;
  }
  return c;
}

std::vector<RegionCell> sweep_region(const RegionConfig& cfg) {
  cfg.validate();
  const std::size_t n = static_cast<std::size_t>(cfg.n_gamma) * cfg.n_lambda;
  std::vector<RegionCell> cells(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const int il = static_cast<int>(k / cfg.n_gamma), ig = static_cast<int>(k % cfg.n_gamma);
      cells[k] = evaluate_cell(node(cfg.gamma_min, cfg.gamma_max, cfg.n_gamma, ig),
                               node(cfg.lambda_min, cfg.lambda_max, cfg.n_lambda, il));
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned jobs = std::min<std::size_t>(cfg.jobs > 0 ? cfg.jobs : hw, n);
  std::vector<std::jthread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  pool.clear();
  return cells;
}

std::size_t nearest_cell(const RegionConfig& cfg, double gamma, double lambda) {
  auto idx = [](double lo, double hi, int n, double x) {
    const long i = std::lround((x - lo) / (hi - lo) * (n - 1));
    return static_cast<std::size_t>(std::clamp<long>(i, 0, n - 1));
  };
  return idx(cfg.lambda_min, cfg.lambda_max, cfg.n_lambda, lambda) * cfg.n_gamma +
         idx(cfg.gamma_min, cfg.gamma_max, cfg.n_gamma, gamma);
}

int boundary_components(const RegionConfig& cfg, const std::vector<RegionCell>& cells) {
  const int ng = cfg.n_gamma, nl = cfg.n_lambda;
  auto signed_class = [&](int il, int ig) -> int {
    const RegionCell& c = cells[static_cast<std::size_t>(il) * ng + ig];
    if (!c.feasible) return 0;
    if (*c.cls == BifurcationClass::Supercritical) return 1;
    if (*c.cls == BifurcationClass::Subcritical) return -1;
    return 0;
  };
  std::vector<char> on(cells.size(), 0);
  for (int il = 0; il < nl; ++il)
    for (int ig = 0; ig < ng; ++ig) {
      const int s = signed_class(il, ig);
      if (s == 0) continue;
      const int nb[4][2] = {{il - 1, ig}, {il + 1, ig}, {il, ig - 1}, {il, ig + 1}};
      for (const auto& q : nb)
        if (q[0] >= 0 && q[0] < nl && q[1] >= 0 && q[1] < ng && signed_class(q[0], q[1]) == -s)
          on[static_cast<std::size_t>(il) * ng + ig] = 1;
    }
  int components = 0;
  std::vector<std::size_t> stack;
  for (std::size_t k = 0; k < on.size(); ++k) {
    if (on[k] != 1) continue;
    ++components;
    on[k] = 2;
    stack.push_back(k);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const int il = static_cast<int>(c / ng), ig = static_cast<int>(c % ng);
      for (int dl = -1; dl <= 1; ++dl)
        for (int dg = -1; dg <= 1; ++dg) {
          const int l = il + dl, g = ig + dg;
          if (l < 0 || l >= nl || g < 0 || g >= ng) continue;
          const std::size_t m = static_cast<std::size_t>(l) * ng + g;
          if (on[m] == 1) {
            on[m] = 2;
            stack.push_back(m);
          }
        }
    }
  }
  return components;
}

void write_region_csv(std::ostream& os, const std::vector<RegionCell>& cells) {
  os << "gamma,lambda,feasible,alpha_c,p0sq,o_total,class\n" << std::setprecision(17);
  auto opt = [&](const std::optional<double>& v) {
    if (v) os << *v;
  };
  for (const auto& c : cells) {
    os << c.gamma << ',' << c.lambda << ',' << (c.feasible ? 1 : 0) << ',';
    opt(c.alpha_c);
    os << ',';
    opt(c.p0sq);
    os << ',';
    opt(c.o_total);
    os << ',' << (c.cls ? to_string(*c.cls) : "") << '\n';
  }
}

void write_region_svg(std::ostream& os, const RegionConfig& cfg,
                      const std::vector<RegionCell>& cells) {
  const double left = 70, top = 30, w = 505, h = 505, right = 180, bottom = 60;
  const double cw = w / cfg.n_gamma, ch = h / cfg.n_lambda;
  auto X = [&](double g) {
    return left + (g - cfg.gamma_min) / (cfg.gamma_max - cfg.gamma_min) * (w - cw) + cw / 2;
  };
  auto Y = [&](double l) {
    return top + h - ch / 2 - (l - cfg.lambda_min) / (cfg.lambda_max - cfg.lambda_min) * (h - ch);
  };
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + w + right << "\" height=\""
     << top + h + bottom << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& c : cells)
    os << "<rect x=\"" << X(c.gamma) - cw / 2 << "\" y=\"" << Y(c.lambda) - ch / 2
       << "\" width=\"" << cw + 0.05 << "\" height=\"" << ch + 0.05 << "\" fill=\"" << fill_of(c)
       << "\"/>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double g = cfg.gamma_min + (cfg.gamma_max - cfg.gamma_min) * t / 4;
    const double l = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * t / 4;
    os << "<line x1=\"" << X(g) << "\" y1=\"" << top + h << "\" x2=\"" << X(g) << "\" y2=\""
       << top + h + 5 << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << X(g) << "\" y=\"" << top + h + 20 << "\" text-anchor=\"middle\">"
       << std::setprecision(3) << g << "</text>\n"
       << std::setprecision(2) << "<line x1=\"" << left - 5 << "\" y1=\"" << Y(l) << "\" x2=\""
       << left << "\" y2=\"" << Y(l) << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << Y(l) + 4 << "\" text-anchor=\"end\">"
       << std::setprecision(3) << l << "</text>\n"
       << std::setprecision(2);
  }
  os << "<text x=\"" << left + w / 2 << "\" y=\"" << top + h + 45
     << "\" text-anchor=\"middle\">gamma</text>\n";
  os << "<text x=\"20\" y=\"" << top + h / 2 << "\" transform=\"rotate(-90 20 " << top + h / 2
     << ")\" text-anchor=\"middle\">lambda</text>\n";
  const std::pair<const char*, const char*> legend[] = {{"#d62728", "supercritical"},
                                                        {"#f2c500", "subcritical"},
                                                        {"#555555", "degenerate"},
                                                        {"#d9d9d9", "infeasible"}};
  double ly = top + 10;
  for (const auto& [col, name] : legend) {
    os << "<rect x=\"" << left + w + 20 << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\""
       << col << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << left + w + 40 << "\" y=\"" << ly + 11 << "\">" << name << "</text>\n";
    ly += 22;
  }
  const std::pair<double, double> marks[] = {{0.2, 1.4}, {0.3, 1.15}};
  for (const auto& [g, l] : marks) {
    if (g < cfg.gamma_min || g > cfg.gamma_max || l < cfg.lambda_min || l > cfg.lambda_max)
      continue;
    os << "<circle cx=\"" << X(g) << "\" cy=\"" << Y(l)
       << "\" r=\"4\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
}

int cmd_region(const RegionConfig& cfg, const std::string& out_prefix, Emit emit,
               std::ostream& out, std::ostream& err) {
  std::vector<RegionCell> cells;
  try {
    cells = sweep_region(cfg);
  } catch (const DomainError& e) {
    err << "invalid region: " << e.what() << '\n';
    return kInfeasible;
  }
  auto emit_file = [&](const std::string& path, auto&& writer) {
    std::ofstream f(path);
    if (!f) return false;
    writer(f);
    f.close();
    return static_cast<bool>(f);
  };
  if (emit != Emit::Svg &&
      !emit_file(out_prefix + ".csv", [&](std::ostream& f) { write_region_csv(f, cells); })) {
    err << "cannot write " << out_prefix << ".csv\n";
    return kIoError;
  }
  if (emit != Emit::Csv &&
      !emit_file(out_prefix + ".svg", [&](std::ostream& f) { write_region_svg(f, cfg, cells); })) {
    err << "cannot write " << out_prefix << ".svg\n";
    return kIoError;
  }
  std::size_t feasible = 0, super = 0, sub = 0;
  for (const auto& c : cells) {
    if (!c.feasible) continue;
    ++feasible;
    if (*c.cls == BifurcationClass::Supercritical) ++super;
    if (*c.cls == BifurcationClass::Subcritical) ++sub;
  }
  out << "cells " << cells.size() << ", feasible " << feasible << ", supercritical " << super
      << ", subcritical " << sub << ", boundary components " << boundary_components(cfg, cells)
      << '\n';
  return kOk;
}

}  // namespace vortwave::cli
