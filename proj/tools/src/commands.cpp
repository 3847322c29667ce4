// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>

#include "vortwave/cli/commands.hpp"
#include "vortwave/errors.hpp"
#include "vortwave/linops.hpp"
#include "vortwave/nonlinear.hpp"
#include "vortwave/reconstruct.hpp"

namespace vortwave::cli {

namespace {

using nlohmann::json;

// Resolves the point or reports why not; nullopt carries the exit code in rc.
std::optional<ResolvedPoint> resolve_or_report(const PointSpec& spec, std::ostream& err, int& rc) {
  try {
    return resolve(spec);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
  }
  rc = kInfeasible;
  return std::nullopt;
}

template <class W>
bool write_file(const std::filesystem::path& path, W&& writer) {
  std::ofstream f(path);
  if (!f) return false;
  writer(f);
  f.close();
  return static_cast<bool>(f);
}

}  // namespace

int cmd_branch(const PointSpec& spec, const BranchOptions& opts, Format fmt, std::ostream& out,
               std::ostream& err) {
  int rc = kOk;
  const auto pt = resolve_or_report(spec, err, rc);
  if (!pt) return rc;
  if (opts.steps < 0 || opts.nq < 4 || opts.nq % 2 != 0 || opts.np < 4) {
    err << "invalid parameters: steps >= 0, even nq >= 4 and np >= 4 required\n";
    return kInfeasible;
  }

  std::ofstream file;
  std::ostream* csv = &out;
  std::ostream* report = &err;
  if (!opts.out.empty()) {
    file.open(opts.out);
    if (!file) {
      err << "cannot write " << opts.out << '\n';
      return kIoError;
    }
    csv = &file;
    report = &out;
  }

  Branch b;
  if (opts.steps > 0) {
    ContinuationConfig cfg;
    cfg.steps = opts.steps;
    cfg.ds = opts.step_size;
    cfg.direction = opts.direction;
    try {
      b = continue_branch(pt->params, make_grid(opts.nq, opts.np), cfg);
    } catch (const DomainError& e) {
      err << "invalid parameters: " << e.what() << '\n';
      return kInfeasible;
    } catch (const std::runtime_error& e) {
      err << "continuation failed: " << e.what() << '\n';
      return kFailed;
    }
  }
  write_branch_csv(*csv, b);
  if (file.is_open()) {
    file.close();
    if (!file) {
      err << "cannot write " << opts.out << '\n';
      return kIoError;
    }
  }
  if (!opts.json.empty() &&
      !write_file(opts.json, [&](std::ostream& f) { f << branch_to_json(b, opts.dump_fields) << '\n'; })) {
    err << "cannot write " << opts.json << '\n';
    return kIoError;
  }

  const BifurcationClass closed = classify(pt->params);
  // At a nearly degenerate pitchfork the quadratic fit is ill-conditioned.
  const bool degenerate = std::abs(o_total(pt->params)) < 1e-6;
  std::optional<DirectionFit> fit;
  if (b.points.size() > 1 && !degenerate) {
    try {
      fit = detect_direction(b.points, alpha_c(pt->params));
    } catch (const DomainError&) {
    }
  }
  const bool agree = !fit || fit->direction == closed;

  if (fmt == Format::Json) {
    json j{{"points", b.points.size()},
           {"truncated", b.truncated},
           {"message", b.message},
           {"ds", b.ds},
           {"closed_form_class", std::string(to_string(closed))},
           {"direction", fit ? json(std::string(to_string(fit->direction))) : json(nullptr)},
           {"coefficient", fit ? json(fit->coefficient) : json(nullptr)},
           {"fit_rel_residual", fit ? json(fit->rel_residual) : json(nullptr)},
           {"agree", agree}};
    *report << j.dump(2) << '\n';
  } else {
    *report << std::setprecision(6) << "points       " << b.points.size() << '\n'
            << "truncated    " << (b.truncated ? "yes: " + b.message : std::string("no")) << '\n'
            << "step         " << b.ds << '\n'
            << "closed form  " << to_string(closed) << '\n';
    if (fit)
      *report << "direction    " << to_string(fit->direction) << "  (alpha - alpha_c = "
              << fit->coefficient << " a^2, fit residual " << fit->rel_residual << ", "
              << fit->points << " points)\n";
    else if (degenerate)
      *report << "direction    degenerate (|O| < 1e-6, not tested)\n";
    else
      *report << "direction    undetermined (too few nontrivial points)\n";
  }
  if (!agree) {
    err << "branch direction disagrees with the closed-form class\n";
    return kDisagreement;
  }
  return kOk;
}

int cmd_eigs(const PointSpec& spec, const EigsOptions& opts, Format fmt, std::ostream& out,
             std::ostream& err) {
  int rc = kOk;
  const auto pt = resolve_or_report(spec, err, rc);
  if (!pt) return rc;
  const double alpha = opts.alpha.value_or(alpha_c(pt->params));
  try {
    if (opts.k) {
      const Eigen::VectorXd ev = ode_eigs({*opts.k, pt->params, alpha, opts.np});
      if (fmt == Format::Json) {
        out << json{{"alpha", alpha}, {"k", *opts.k},
                    {"eigenvalues", std::vector<double>(ev.data(), ev.data() + ev.size())}}
                   .dump(2)
            << '\n';
      } else {
        out << std::setprecision(6) << "alpha " << alpha << ", k = " << *opts.k << '\n';
        for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i) out << "  " << ev(i) << '\n';
      }
      return kOk;
    }
    const Spectrum s = spectrum(pt->params, alpha, opts.kmax, opts.np);
    if (fmt == Format::Json) {
      out << to_json(s) << '\n';
    } else {
      out << std::setprecision(6) << "alpha " << alpha << ", kmax " << s.kmax << '\n';
      for (int k = 0; k <= s.kmax; ++k) {
        const auto& ev = s.per_k[k];
        out << "  k = " << k << ": largest " << ev(ev.size() - 1) << ", positive "
            << (ev.array() > 0.0).count() << '\n';
      }
      out << "morse index " << s.morse_index << '\n';
    }
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kInfeasible;
  } catch (const NumericalError& e) {
    err << "spectrum failed: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}

int cmd_reconstruct(const PointSpec& spec, const ReconstructOptions& opts, Format fmt,
                    std::ostream& out, std::ostream& err) {
  int rc = kOk;
  const auto pt = resolve_or_report(spec, err, rc);
  if (!pt) return rc;
  const ModelParams& params = pt->params;
  if (opts.alpha && opts.amplitude) {
    err << "invalid parameters: alpha is fixed by the branch when amplitude is given\n";
    return kInfeasible;
  }
  if (opts.nq < 4 || opts.nq % 2 != 0 || opts.np < 4 || opts.nr < 2) {
    err << "invalid parameters: even nq >= 4, np >= 4 and nr >= 2 required\n";
    return kInfeasible;
  }

  const GridPtr grid = make_grid(opts.nq, opts.np);
  Field2D h = trivial_height(grid, params.gamma);
  double alpha = opts.alpha.value_or(alpha_c(params));
  if (opts.amplitude && *opts.amplitude != 0.0) {
    try {
      const NewtonResult r = solve_at_amplitude(params, grid, *opts.amplitude);
      h = r.state.h;
      alpha = r.state.alpha;
    } catch (const std::runtime_error& e) {
      err << "no branch point at amplitude " << *opts.amplitude << ": " << e.what() << '\n';
      return kReconstructionFailed;
    }
  }

  std::optional<DimensionalParams> dim;
  if (opts.a) {
    if (!opts.omega0 || !opts.rho) {
      err << "invalid parameters: dimensional output needs a, omega0 and rho\n";
      return kInfeasible;
    }
    if (!opts.g && !opts.alpha && !opts.amplitude) {
      err << "invalid parameters: give g or alpha\n";
      return kInfeasible;
    }
    DimensionalParams d{*opts.a, *opts.omega0, *opts.rho, 0.0, opts.p_atm};
    d.g = opts.g.value_or(alpha * d.a * d.omega0 * d.omega0);
    if (opts.g && !opts.alpha && !opts.amplitude) alpha = d.alpha();
    try {
      d.validate();
    } catch (const DomainError& e) {
      err << "invalid parameters: " << e.what() << '\n';
      return kInfeasible;
    }
    if (std::abs(d.alpha() - alpha) > 1e-9 * std::abs(alpha)) {
      err << "invalid parameters: g / (a omega0^2) = " << d.alpha() << " differs from alpha "
          << alpha << '\n';
      return kInfeasible;
    }
    dim = d;
  }
  if (!(alpha >= alpha_s(params))) {
    err << "invalid parameters: alpha below alpha_s = " << alpha_s(params) << '\n';
    return kInfeasible;
  }

  PhysicalFields f;
  BernoulliReport ber;
  double rt = 0.0;
  try {
    f = stream_from_height(h, opts.nr);
    velocities(f, params, alpha, dim ? dim->q0() : 0.0);
    ber = bernoulli_check(f, params);
    rt = round_trip_error(h);
  } catch (const ReconstructionError& e) {
    err << "reconstruction failed: " << e.what() << '\n';
    return kReconstructionFailed;
  } catch (const InadmissibleError& e) {
    err << "reconstruction failed: " << e.what() << '\n';
    return kReconstructionFailed;
  }
  const Eigen::VectorXd flux = mass_flux(f);

  namespace fs = std::filesystem;
  const fs::path dir(opts.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  bool ok = !ec;
  ok = ok && write_file(dir / "fields.csv", [&](std::ostream& s) { write_fields_csv(s, f); });
  ok = ok && write_file(dir / "surface.csv", [&](std::ostream& s) { write_surface_csv(s, f); });
  ok = ok && write_file(dir / "surface.svg", [&](std::ostream& s) { write_surface_svg(s, f); });
  if (dim) {
    const DimensionalFields d = to_dimensional(f, *dim);
    ok = ok && write_file(dir / "dimensional.csv", [&](std::ostream& s) {
      s << "Theta,r,u_r,u_theta,pressure\n" << std::setprecision(17);
      for (int i = 0; i < d.r.rows(); ++i)
        for (int c = 0; c < d.r.cols(); ++c)
          s << f.theta(i) << ',' << d.r(i, c) << ',' << d.u_r(i, c) << ',' << d.u_theta(i, c)
            << ',' << d.pressure(i, c) << '\n';
    });
    ok = ok && write_file(dir / "dimensional_surface.csv", [&](std::ostream& s) {
      s << "Theta,eta\n" << std::setprecision(17);
      for (int i = 0; i < d.eta.size(); ++i) s << f.theta(i) << ',' << d.eta(i) << '\n';
    });
  }
  if (!ok) {
    err << "cannot write into " << opts.out_dir << '\n';
    return kIoError;
  }

  const double flux_spread = flux.maxCoeff() - flux.minCoeff();
  const double bed_u = f.U.col(0).cwiseAbs().maxCoeff();
  if (fmt == Format::Json) {
    json j{{"alpha", alpha},
           {"amplitude", amplitude(h, params.gamma)},
           {"S_min", f.S.minCoeff()},
           {"S_max", f.S.maxCoeff()},
           {"E", f.E},
           {"E_mean", ber.E_mean},
           {"E_spread", ber.E_spread},
           {"lambda_error", ber.lambda_error},
           {"flux_mean", flux.mean()},
           {"flux_spread", flux_spread},
           {"round_trip_error", rt},
           {"bed_U_max", bed_u},
           {"p0_zero", params.p0sq == 0.0}};
    out << j.dump(2) << '\n';
  } else {
    out << std::setprecision(6) << "alpha             " << alpha << '\n'
        << "amplitude         " << amplitude(h, params.gamma) << '\n'
        << "surface S         [" << f.S.minCoeff() << ", " << f.S.maxCoeff() << "]\n"
        << "Bernoulli E       " << ber.E_mean << "  (spread " << ber.E_spread
        << ", lambda error " << ber.lambda_error << ")\n"
        << "mass flux         " << flux.mean() << "  (spread " << flux_spread << ")\n"
        << "round trip error  " << rt << '\n'
        << "max |U| on bed    " << bed_u << '\n';
    if (params.p0sq == 0.0) out << "p0sq = 0: degenerate flow, V = R and U = 0\n";
  }
  return kOk;
}

}  // namespace vortwave::cli
