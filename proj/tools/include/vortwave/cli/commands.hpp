// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the vortwave executable.  Each command
// writes its report to `out` and returns the process exit code.
#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vortwave/params.hpp"

namespace vortwave::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,  // verify failure or an unexpected numerical error
  kInfeasible = 2,
  kIoError = 3,
  kDisagreement = 4,
  kReconstructionFailed = 5,
};

enum class Format { Text, Json };

// A parameter point given either by (gamma, lambda) or by (gamma, p0sq).
struct PointSpec {
  std::optional<double> gamma;
  std::optional<double> lambda;
  std::optional<double> p0sq;
};

struct ResolvedPoint {
  ModelParams params;
  double lambda = 0.0;  // lambda at alpha_c
};

// Throws DomainError on an incomplete or over-specified point and
// InfeasibleError from the critical-pair solve.
ResolvedPoint resolve(const PointSpec& spec);

struct CriticalReport {
  double gamma = 0.0;
  double lambda = 0.0;
  double p0sq = 0.0;
  double p0sq_limit = 0.0;
  double alpha_s = 0.0;
  double alpha_c = 0.0;
  // The pitchfork coefficients are undefined at p0sq = 0.
  std::optional<double> o1, o2, o_total;
  std::optional<double> o_printed;           // bracket of the expanded formula
  std::optional<double> o_printed_expanded;  // full expanded formula
  std::optional<double> o2_free_bed;
  std::optional<BifurcationClass> cls;
  bool p0_zero = false;
};

CriticalReport critical_report(const ResolvedPoint& pt);
std::string to_json(const CriticalReport& r);
CriticalReport critical_from_json(const std::string& text);
void write_text(std::ostream& os, const CriticalReport& r);

int cmd_critical(const PointSpec& spec, Format fmt, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------- region

struct RegionCell {
  double gamma = 0.0;
  double lambda = 0.0;
  bool feasible = false;
  std::optional<double> alpha_c;
  std::optional<double> p0sq;
  std::optional<double> o_total;
  std::optional<BifurcationClass> cls;
};

struct RegionConfig {
  double gamma_min = 0.05, gamma_max = 0.95;
  double lambda_min = 0.5, lambda_max = 2.5;
  int n_gamma = 101, n_lambda = 101;
  int jobs = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Row-major in lambda then gamma: cell (il, ig) at il * n_gamma + ig.
std::vector<RegionCell> sweep_region(const RegionConfig& cfg);
RegionCell evaluate_cell(double gamma, double lambda);

// Index of the grid node nearest to (gamma, lambda).
std::size_t nearest_cell(const RegionConfig& cfg, double gamma, double lambda);

// Feasible cells with a 4-neighbour of the opposite class form the
// boundary; returns the number of its 8-connected components.
int boundary_components(const RegionConfig& cfg, const std::vector<RegionCell>& cells);

void write_region_csv(std::ostream& os, const std::vector<RegionCell>& cells);
void write_region_svg(std::ostream& os, const RegionConfig& cfg,
                      const std::vector<RegionCell>& cells);

enum class Emit { Csv, Svg, Both };
int cmd_region(const RegionConfig& cfg, const std::string& out_prefix, Emit emit,
               std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------- branch

struct BranchOptions {
  int steps = 20;
  double step_size = 0.0;  // 0 = automatic
  int nq = 64;
  int np = 32;
  int direction = 1;
  std::string out;   // branch CSV; empty writes it to `out`
  std::string json;  // optional branch JSON
  bool dump_fields = false;
};

int cmd_branch(const PointSpec& spec, const BranchOptions& opts, Format fmt, std::ostream& out,
               std::ostream& err);

// ---------------------------------------------------------------- eigs

struct EigsOptions {
  std::optional<double> alpha;  // defaults to alpha_c
  std::optional<int> k;         // one wavenumber instead of the spectrum
  int kmax = 8;
  int np = 32;
};

int cmd_eigs(const PointSpec& spec, const EigsOptions& opts, Format fmt, std::ostream& out,
             std::ostream& err);

// ---------------------------------------------------------------- reconstruct

struct ReconstructOptions {
  std::optional<double> alpha;      // defaults to alpha_c on the trivial branch
  std::optional<double> amplitude;  // absent reconstructs the trivial solution
  int nq = 64;
  int np = 32;
  int nr = 33;
  std::string out_dir = ".";
  // Dimensional output when a is given.
  std::optional<double> a, omega0, rho, g;
  double p_atm = 0.0;
};

int cmd_reconstruct(const PointSpec& spec, const ReconstructOptions& opts, Format fmt,
                    std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------- verify

struct VerifyItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Seams for seeded-fault runs.
struct VerifyHooks {
  std::function<double(const ModelParams&)> alpha_c = [](const ModelParams& p) {
    return vortwave::alpha_c(p);
  };
};

std::vector<VerifyItem> run_verify(bool full, const VerifyHooks& hooks = {});
int cmd_verify(bool full, Format fmt, std::ostream& out, std::ostream& err);

}  // namespace vortwave::cli
