// Copyright 2026 the gridalloc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "gridalloc/io.hpp"
#include "gridalloc/optimizer.hpp"
#include "gridalloc/system.hpp"
#include "gridalloc/timeseries.hpp"

#ifndef GRIDALLOC_CASES_DIR
#define GRIDALLOC_CASES_DIR "cases"
#endif

namespace {

using namespace gridalloc;

const SystemCase& desk_case() {
  static const SystemCase sys =
      load_case(std::string(GRIDALLOC_CASES_DIR) + "/desk/case.json");
  return sys;
}

const ScenarioTree& desk_tree() {
  static const ScenarioTree tree = load_tree(
      std::string(GRIDALLOC_CASES_DIR) + "/desk/tree.json", desk_case());
  return tree;
}

void BM_ShiftFactors(benchmark::State& state) {
  const SystemCase& sys = desk_case();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        compute_shift_factors(sys.buses, sys.lines, sys.reference_bus()));
  }
}
BENCHMARK(BM_ShiftFactors);

HourlySeries system_net_load(const SystemCase& sys) {
  const int hours = sys.hours();
  HourlySeries series(hours, 0.0);
  for (int h = 0; h < hours; ++h) {
    double v = sys.demand.col(h).sum();
    for (size_t g = 0; g < sys.technologies.size(); ++g) {
      if (!sys.technologies[g].is_renewable) continue;
      for (int b = 0; b < sys.demand.rows(); ++b) {
        v -= sys.fleet.existing(b, g) * sys.fleet.availability[g](b, h);
      }
    }
    series[h] = v;
  }
  return series;
}

void BM_ClusterDays(benchmark::State& state) {
  const HourlySeries series = system_net_load(desk_case());
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster_days(series, k, /*seed=*/0));
  }
}
BENCHMARK(BM_ClusterDays)->Arg(2)->Arg(4)->Arg(7);

void BM_ModelBuild(benchmark::State& state) {
  const SystemCase& sys = desk_case();
  const ScenarioTree& tree = desk_tree();
  const TimeBlocks blocks = cluster_days(system_net_load(sys), 2, /*seed=*/0);
  const DispatchData dd = resolve_dispatch(sys, blocks);
  for (auto _ : state) {
    ExpansionModel em(sys, tree, dd);
    benchmark::DoNotOptimize(em.num_w());
  }
}
BENCHMARK(BM_ModelBuild);

void BM_FixedLpSolve(benchmark::State& state) {
  const SystemCase& sys = desk_case();
  const ScenarioTree& tree = desk_tree();
  const TimeBlocks blocks = cluster_days(system_net_load(sys), 2, /*seed=*/0);
  const DispatchData dd = resolve_dispatch(sys, blocks);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();
  const std::vector<double> w(em.num_w(), 0.0);
  const SolveOptions options;
  for (auto _ : state) {
    benchmark::DoNotOptimize(em.fix_and_solve_lp(*backend, w, options));
  }
}
BENCHMARK(BM_FixedLpSolve);

}  // namespace

BENCHMARK_MAIN();
