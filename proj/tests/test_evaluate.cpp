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

#include "gridalloc/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "toys.hpp"

using namespace gridalloc;

namespace {

UncertaintyGrid toy_grid() {
  UncertaintyGrid grid;
  GridDimension load{"load", {}};
  for (auto [name, s] : {std::pair{"low", 0.8}, {"medium", 1.0},
                         {"high", 1.2}}) {
    GridLevel lvl;
    lvl.name = name;
    lvl.data.demand_scale = s;
    load.levels.push_back(lvl);
  }
  GridDimension fuel{"fuel", {}};
  for (auto [name, s] : {std::pair{"low", 0.8}, {"medium", 1.0},
                         {"high", 1.25}}) {
    GridLevel lvl;
    lvl.name = name;
    lvl.data.fuel_scale["gen"] = s;
    fuel.levels.push_back(lvl);
  }
  GridDimension invest{"invest", {}};
  for (auto [name, s] : {std::pair{"low", 0.9}, {"medium", 1.0},
                         {"high", 1.1}}) {
    GridLevel lvl;
    lvl.name = name;
    lvl.data.invest_scale["gen"] = s;
    invest.levels.push_back(lvl);
  }
  grid.dimensions = {load, fuel, invest};
  return grid;
}

OosSetup toy_setup(const SystemCase& sys) {
  OosSetup setup;
  setup.base = &sys;
  setup.grid = toy_grid();
  setup.expansion_caps = {50.0};       // initial 30 plus the 20 MW increment
  setup.counterfactual_caps = {30.0};  // initial capacity only
  return setup;
}

std::map<int, const ComboResult*> by_combo(const SweepResult& r) {
  std::map<int, const ComboResult*> m;
  for (const ComboResult& c : r.ranked) m[c.combo_index] = &c;
  return m;
}

}  // namespace

TEST_CASE("27-combination sweep solves every combo with normalized shares") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
  const OosSetup setup = toy_setup(sys);
  const SolveOptions options;
  const SweepResult result = sweep(setup, options);

  CHECK(result.failed == 0);
  REQUIRE(result.ranked.size() == 27);
  for (const ComboResult& c : result.ranked) {
    REQUIRE(c.ok);
    CHECK(c.error.empty());
    // The extra 20 MW relieves curtailment in every combination.
    CHECK(c.gross_benefit > 0.0);
    REQUIRE(c.load_share.size() == 2);
    CHECK(c.load_share[0] == doctest::Approx(0.0));    // bus a has no load
    CHECK(c.load_share[1] == doctest::Approx(100.0));  // bus b takes it all
    CHECK(c.load_share[0] + c.load_share[1] ==
          doctest::Approx(100.0).epsilon(1e-9));
  }
  // Ranked by descending gross benefit, ties broken by combo index.
  for (size_t i = 1; i < result.ranked.size(); ++i) {
    const ComboResult& a = result.ranked[i - 1];
    const ComboResult& b = result.ranked[i];
    CHECK((a.gross_benefit > b.gross_benefit ||
           (a.gross_benefit == b.gross_benefit &&
            a.combo_index < b.combo_index)));
  }
}

TEST_CASE("sweep results are deterministic across reruns and thread counts") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
  const OosSetup setup = toy_setup(sys);
  const SolveOptions options;
  const SweepResult a = sweep(setup, options, /*threads=*/1);
  const SweepResult b = sweep(setup, options, /*threads=*/1);
  const SweepResult c = sweep(setup, options, /*threads=*/3);
  REQUIRE(a.ranked.size() == b.ranked.size());
  REQUIRE(a.ranked.size() == c.ranked.size());
  for (size_t i = 0; i < a.ranked.size(); ++i) {
    CHECK(a.ranked[i].combo_index == b.ranked[i].combo_index);
    CHECK(a.ranked[i].gross_benefit == b.ranked[i].gross_benefit);
    CHECK(a.ranked[i].combo_index == c.ranked[i].combo_index);
    CHECK(a.ranked[i].gross_benefit == c.ranked[i].gross_benefit);
  }
}

TEST_CASE("combo resolution scales data and builds readable labels") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
  const UncertaintyGrid grid = toy_grid();
  const ResolvedCombo combo = resolve_combo(sys, grid, {0, 2, 1});
  CHECK(combo.demand_scale == doctest::Approx(0.8));
  CHECK(combo.fuel_cost[0] == doctest::Approx(30.0 * 1.25));
  CHECK(combo.invest_cost[0] == doctest::Approx(1e6));
  CHECK(combo.label == "load=low fuel=high invest=medium");
}

TEST_CASE("identical networks produce no realized beneficiaries") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
  OosSetup setup = toy_setup(sys);
  setup.counterfactual_caps = setup.expansion_caps;
  const SolveOptions options;
  const SweepResult result = sweep(setup, options);
  CHECK(result.failed == 0);
  for (const ComboResult& c : result.ranked) {
    CHECK(std::abs(c.gross_benefit) <= 1e-6);
    CHECK(c.load_share.empty());
  }
  const DivergenceReport rep =
      ex_ante_vs_ex_post(result, {0.0, 100.0}, {"a", "b"});
  CHECK(rep.no_realized_beneficiaries);
  CHECK(rep.combos_without_beneficiaries == 27);
}

TEST_CASE("later-stage additions shrink the realized expansion benefit") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
  const OosSetup setup = toy_setup(sys);
  const SolveOptions options;
  CHECK_THROWS_AS(later_stage_scenario(setup, {{7, 0}}, options),
                  std::invalid_argument);
  CHECK_THROWS_AS(later_stage_scenario(setup, {{0, 9}}, options),
                  std::invalid_argument);

  const SweepResult base = sweep(setup, options);
  // Adding the 20 MW increment to both networks: the counterfactual now has
  // 50 MW, enough for most demand, so the expansion is worth less.
  const SweepResult later = later_stage_scenario(setup, {{0, 0}}, options);
  CHECK(later.failed == 0);
  const auto base_by = by_combo(base);
  double shrunk = 0.0;
  for (const ComboResult& c : later.ranked) {
    const ComboResult& b = *base_by.at(c.combo_index);
    CHECK(c.gross_benefit <= b.gross_benefit + 1e-6);
    if (c.gross_benefit < b.gross_benefit - 1e-6) shrunk += 1.0;
  }
  CHECK(shrunk > 0.0);
}

TEST_CASE("divergence report ranges and histograms cover every solved "
          "combo") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
  const OosSetup setup = toy_setup(sys);
  const SolveOptions options;
  const SweepResult result = sweep(setup, options);
  const DivergenceReport rep =
      ex_ante_vs_ex_post(result, {0.0, 100.0}, {"a", "b"}, /*bins=*/5);
  REQUIRE(rep.participants.size() == 2);
  CHECK(rep.bins == 5);
  CHECK(rep.combos_used == 27);
  CHECK_FALSE(rep.no_realized_beneficiaries);
  for (const ParticipantDivergence& p : rep.participants) {
    int total = 0;
    for (int n : p.histogram) total += n;
    CHECK(total == rep.combos_used);
    CHECK(p.realized_min <= p.realized_max);
  }
  // Bus b always realizes 100%, matching its ex ante share exactly.
  CHECK(rep.participants[1].ex_ante == doctest::Approx(100.0));
  CHECK_FALSE(rep.participants[1].ex_ante_outside_range);
  CHECK(rep.participants[1].realized_min == doctest::Approx(100.0));

  CHECK_THROWS_AS(ex_ante_vs_ex_post(SweepResult{}, {0.0, 100.0}, {"a", "b"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ex_ante_vs_ex_post(result, {100.0}, {"a"}),
                  std::invalid_argument);
}
