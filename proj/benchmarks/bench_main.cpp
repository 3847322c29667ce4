// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "vortwave/cli/commands.hpp"
#include "vortwave/linops.hpp"
#include "vortwave/nonlinear.hpp"
#include "vortwave/reconstruct.hpp"

using namespace vortwave;

namespace {

const ModelParams kEx1{0.2, 0.0059440229244219617778};

void BM_ClosedForms(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(closed_forms(kEx1));
}
BENCHMARK(BM_ClosedForms);

void BM_CriticalPair(benchmark::State& st) {
  double l = 1.4;
  for (auto _ : st) {
    benchmark::DoNotOptimize(solve_critical_pair(0.2, l));
    l = l == 1.4 ? 1.41 : 1.4;
  }
}
BENCHMARK(BM_CriticalPair);

void BM_RegionCell(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(cli::evaluate_cell(0.3, 1.15));
}
BENCHMARK(BM_RegionCell);

void BM_Residual(benchmark::State& st) {
  const auto n = static_cast<int>(st.range(0));
  const GridPtr g = make_grid(n, n / 2);
  const Field2D h = trivial_height(g, kEx1.gamma) + 0.01 * null_mode_field(g, kEx1.gamma);
  for (auto _ : st) benchmark::DoNotOptimize(residual_G(kEx1, 1.72, h));
}
BENCHMARK(BM_Residual)->Arg(32)->Arg(64)->Arg(128);

void BM_NewtonFixedAlpha(benchmark::State& st) {
  const auto n = static_cast<int>(st.range(0));
  const GridPtr g = make_grid(n, n / 2);
  const Field2D H = trivial_height(g, kEx1.gamma);
  const StateVector x{H + 1e-4 * null_mode_field(g, kEx1.gamma), alpha_c(kEx1) - 0.05};
  for (auto _ : st) benchmark::DoNotOptimize(newton_solve(kEx1, x, Constraint::fixed_alpha()));
}
BENCHMARK(BM_NewtonFixedAlpha)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OdeEigs(benchmark::State& st) {
  const auto np = static_cast<int>(st.range(0));
  const double ac = alpha_c(kEx1);
  for (auto _ : st) benchmark::DoNotOptimize(ode_eigs({1, kEx1, ac, np}));
}
BENCHMARK(BM_OdeEigs)->Arg(32)->Arg(64);

void BM_MorseIndex(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(morse_index(kEx1, 1.8));
}
BENCHMARK(BM_MorseIndex)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& st) {
  const GridPtr g = make_grid(64, 32);
  const Field2D h = trivial_height(g, kEx1.gamma) + 0.005 * null_mode_field(g, kEx1.gamma);
  for (auto _ : st) {
    PhysicalFields f = stream_from_height(h);
    velocities(f, kEx1, 1.72);
    benchmark::DoNotOptimize(f.Upsilon.data());
  }
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
