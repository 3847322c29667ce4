// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// vortwave: bifurcation analysis of annular constant-vorticity waves.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "vortwave/cli/commands.hpp"

using namespace vortwave::cli;

namespace {

// Returns the value of --config from argv, if any.
std::string config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

// Preloads option defaults from a flat JSON object keyed by long option
// name.  Flags given on the command line override them.
void apply_config(CLI::App& app, const nlohmann::json& cfg) {
  for (const auto& [key, value] : cfg.items()) {
    const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    bool used = false;
    for (CLI::App* sub : app.get_subcommands({})) {
      if (CLI::Option* opt = sub->get_option_no_throw("--" + key)) {
        opt->default_val(text);
        used = true;
      }
    }
    if (!used) throw CLI::ValidationError("--config", "unknown key '" + key + "'");
  }
}

void add_point(CLI::App* cmd, PointSpec& pt) {
  cmd->add_option("--gamma", pt.gamma, "vorticity shape parameter in (0, 1)");
  auto* l = cmd->add_option("--lambda", pt.lambda, "Bernoulli parameter at alpha_c");
  auto* p = cmd->add_option("--p0sq", pt.p0sq, "squared relative mass flux");
  l->excludes(p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation analysis of annular constant-vorticity water waves"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "JSON file of option defaults");

  Format fmt = Format::Text;
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", fmt, "text or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  PointSpec point;

  auto* critical = app.add_subcommand("critical", "critical pair, pitchfork coefficient and class");
  add_point(critical, point);
  add_format(critical);

  RegionConfig region;
  std::string region_out = "region";
  std::string emit = "both";
  int resolution = 0;
  auto* reg = app.add_subcommand("region", "classify a (gamma, lambda) rectangle");
  reg->add_option("--gamma-min", region.gamma_min, "lower gamma edge");
  reg->add_option("--gamma-max", region.gamma_max, "upper gamma edge");
  reg->add_option("--lambda-min", region.lambda_min, "lower lambda edge");
  reg->add_option("--lambda-max", region.lambda_max, "upper lambda edge");
  reg->add_option("--resolution", resolution, "nodes per axis");
  reg->add_option("--n-gamma", region.n_gamma, "gamma nodes");
  reg->add_option("--n-lambda", region.n_lambda, "lambda nodes");
  reg->add_option("--jobs", region.jobs, "worker threads, 0 for all cores");
  reg->add_option("--out", region_out, "output path prefix");
  reg->add_option("--emit", emit, "csv, svg or both")->check(CLI::IsMember({"csv", "svg", "both"}));

  BranchOptions branch;
  auto* br = app.add_subcommand("branch", "continue the bifurcating branch from (alpha_c, H)");
  add_point(br, point);
  br->add_option("--steps", branch.steps, "continuation steps");
  br->add_option("--step-size", branch.step_size, "arclength step, 0 for automatic");
  br->add_option("--nq", branch.nq, "q nodes (even)");
  br->add_option("--np", branch.np, "p nodes");
  br->add_option("--direction", branch.direction, "+1 or -1");
  br->add_option("--out", branch.out, "branch CSV path");
  br->add_option("--json", branch.json, "branch JSON path");
  br->add_flag("--dump-fields", branch.dump_fields, "include height fields in the JSON");
  add_format(br);

  EigsOptions eigs;
  auto* eg = app.add_subcommand("eigs", "mode eigenvalues and Morse index");
  add_point(eg, point);
  eg->add_option("--alpha", eigs.alpha, "defaults to alpha_c");
  eg->add_option("--k", eigs.k, "single wavenumber");
  eg->add_option("--kmax", eigs.kmax, "largest wavenumber summed");
  eg->add_option("--np", eigs.np, "p nodes");
  add_format(eg);

  ReconstructOptions rec;
  auto* rc = app.add_subcommand("reconstruct", "stream function, velocities and surface");
  add_point(rc, point);
  rc->add_option("--alpha", rec.alpha, "trivial-branch alpha, defaults to alpha_c");
  rc->add_option("--amplitude", rec.amplitude, "cos-mode amplitude of a branch point");
  rc->add_option("--nq", rec.nq, "q nodes (even)");
  rc->add_option("--np", rec.np, "p nodes");
  rc->add_option("--nr", rec.nr, "radial samples");
  rc->add_option("--out", rec.out_dir, "output directory");
  rc->add_option("--a", rec.a, "bed radius");
  rc->add_option("--omega0", rec.omega0, "half the vorticity");
  rc->add_option("--rho", rec.rho, "density");
  rc->add_option("--g", rec.g, "gravity");
  rc->add_option("--p-atm", rec.p_atm, "atmospheric pressure");
  add_format(rc);

  std::string level = "quick";
  auto* vf = app.add_subcommand("verify", "run the invariant suites");
  vf->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  add_format(vf);

  try {
    if (const std::string path = config_path(argc, argv); !path.empty()) {
      std::ifstream in(path);
      if (!in) {
        std::cerr << "cannot read config " << path << '\n';
        return kIoError;
      }
      nlohmann::json cfg;
      try {
        cfg = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad config " << path << ": " << e.what() << '\n';
        return kIoError;
      }
      apply_config(app, cfg);
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*critical) return cmd_critical(point, fmt, std::cout, std::cerr);
    if (*reg) {
      if (resolution > 0) region.n_gamma = region.n_lambda = resolution;
      const Emit e = emit == "csv" ? Emit::Csv : emit == "svg" ? Emit::Svg : Emit::Both;
      return cmd_region(region, region_out, e, std::cout, std::cerr);
    }
    if (*br) return cmd_branch(point, branch, fmt, std::cout, std::cerr);
    if (*eg) return cmd_eigs(point, eigs, fmt, std::cout, std::cerr);
    if (*rc) return cmd_reconstruct(point, rec, fmt, std::cout, std::cerr);
    if (*vf) return cmd_verify(level == "full", fmt, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
