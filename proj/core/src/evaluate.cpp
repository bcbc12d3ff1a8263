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
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gridalloc/benefits.hpp"

namespace gridalloc {

std::vector<double> first_stage_capacities(
    const ExpansionPlan& plan, const ExpansionModel& em,
    const std::vector<LineSelection>& removed) {
  const SystemCase& sys = em.system();
  const int root = em.tree().root();
  std::vector<double> caps(sys.lines.size());
  for (size_t l = 0; l < sys.lines.size(); ++l) {
    caps[l] = sys.lines[l].initial_capacity;
  }
  auto is_removed = [&](const LineSelection& s) {
    for (const LineSelection& r : removed) {
      if (r.node == s.node && r.line == s.line && r.increment == s.increment) {
        return true;
      }
    }
    return false;
  };
  for (const LineSelection& s : plan.selected) {
    if (s.node != root || is_removed(s)) continue;
    caps[s.line] += sys.catalog.increments.at(s.increment).delta_mw;
  }
  return caps;
}

ResolvedCombo resolve_combo(const SystemCase& sys, const UncertaintyGrid& grid,
                            const std::vector<int>& levels) {
  if (levels.size() != grid.dimensions.size()) {
    throw std::invalid_argument("grid level vector length mismatch");
  }
  ResolvedCombo combo;
  combo.fuel_cost.reserve(sys.technologies.size());
  combo.invest_cost.reserve(sys.technologies.size());
  for (const Technology& tech : sys.technologies) {
    combo.fuel_cost.push_back(tech.base_c_en);
    combo.invest_cost.push_back(tech.base_c_inv);
  }
  for (size_t d = 0; d < grid.dimensions.size(); ++d) {
    const GridDimension& dim = grid.dimensions[d];
    const int lvl = levels[d];
    if (lvl < 0 || lvl >= static_cast<int>(dim.levels.size())) {
      throw std::invalid_argument("grid level out of range for dimension '" +
                                  dim.name + "'");
    }
    const GridLevel& level = dim.levels[lvl];
    if (!combo.label.empty()) combo.label += " ";
    combo.label += dim.name + "=" + level.name;
    const DataOverride& data = level.data;
    if (data.demand_scale) combo.demand_scale *= *data.demand_scale;
    for (const auto& [tech_id, scale] : data.fuel_scale) {
      const int g = sys.tech_index(tech_id);
      if (g < 0) {
        throw std::invalid_argument("grid dimension '" + dim.name +
                                    "' scales unknown technology '" + tech_id +
                                    "'");
      }
      combo.fuel_cost[g] *= scale;
    }
    for (const auto& [tech_id, scale] : data.invest_scale) {
      const int g = sys.tech_index(tech_id);
      if (g < 0) {
        throw std::invalid_argument("grid dimension '" + dim.name +
                                    "' scales unknown technology '" + tech_id +
                                    "'");
      }
      combo.invest_cost[g] *= scale;
    }
    if (data.rps) combo.rps = *data.rps;
  }
  return combo;
}

namespace {

/// The base case with fixed line capacities and an emptied expansion menu:
/// the evaluation LP has no w columns.
SystemCase fixed_network_case(const SystemCase& base,
                              const std::vector<double>& caps) {
  SystemCase sys = base;
  for (size_t l = 0; l < sys.lines.size(); ++l) {
    sys.lines[l].initial_capacity = caps[l];
  }
  sys.catalog.line_cost.clear();
  return sys;
}

ScenarioTree single_node_tree(const ResolvedCombo& combo) {
  ScenarioNode node;
  node.id = "eval";
  node.depth = 1;
  node.probability = 1.0;
  node.demand_scale = combo.demand_scale;
  node.fuel_cost = combo.fuel_cost;
  node.invest_cost = combo.invest_cost;
  node.rps = combo.rps;
  return ScenarioTree::from_nodes({node});
}

std::vector<ExpansionModel::BoundOverride> frozen_fleet_overrides(
    const ExpansionModel& em) {
  std::vector<ExpansionModel::BoundOverride> overrides;
  const Dims& d = em.dims();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        overrides.push_back({em.col_build(n, b, g), 0.0, 0.0});
        overrides.push_back({em.col_retire(n, b, g), 0.0, 0.0});
      }
    }
  }
  return overrides;
}

ComboResult run_combo(const OosSetup& setup, const DispatchData& dispatch,
                      SolverBackend& backend, const SolveOptions& options,
                      int combo_index, const std::vector<int>& levels) {
  ComboResult result;
  result.combo_index = combo_index;
  result.levels = levels;

  const ResolvedCombo combo = resolve_combo(*setup.base, setup.grid, levels);
  const SystemCase case_exp =
      fixed_network_case(*setup.base, setup.expansion_caps);
  const SystemCase case_cf =
      fixed_network_case(*setup.base, setup.counterfactual_caps);
  const ScenarioTree tree = single_node_tree(combo);

  const std::vector<double> one_year = {1.0};
  ExpansionModel em_exp(case_exp, tree, dispatch, one_year);
  ExpansionModel em_cf(case_cf, tree, dispatch, one_year);

  std::vector<ExpansionModel::BoundOverride> overrides;
  if (setup.frozen_fleet) overrides = frozen_fleet_overrides(em_exp);
  const std::vector<double> no_w;
  PrimalDualSolution sol_exp =
      em_exp.fix_and_solve_lp(backend, no_w, overrides, options);
  PrimalDualSolution sol_cf =
      em_cf.fix_and_solve_lp(backend, no_w, overrides, options);

  result.gross_benefit = sol_exp.objective - sol_cf.objective;
  // Both models share demand, weights, and fuel costs; only line bounds
  // differ, so one of them can value both solutions.
  BenefitReport report =
      compute_benefit_report(sol_exp, sol_cf, em_exp, combo.label);
  result.load_delta = report.load_delta;
  result.gen_unit_delta = report.gen_unit_delta;

  double denom = 0.0;
  for (double d : result.load_delta) denom += std::max(d, 0.0);
  if (denom > 0.0) {
    result.load_share.reserve(result.load_delta.size());
    for (double d : result.load_delta) {
      result.load_share.push_back(100.0 * std::max(d, 0.0) / denom);
    }
  }
  result.ok = true;
  return result;
}

}  // namespace

SweepResult sweep(const OosSetup& setup, const SolveOptions& options,
                  int threads) {
  if (setup.base == nullptr) {
    throw std::invalid_argument("sweep setup has no base case");
  }
  const size_t lines = setup.base->lines.size();
  if (setup.expansion_caps.size() != lines ||
      setup.counterfactual_caps.size() != lines) {
    throw std::invalid_argument(
        "sweep capacity vectors do not match the line count");
  }
  const std::vector<std::vector<int>> combos = enumerate_grid(setup.grid);
  const DispatchData dispatch = full_resolution_dispatch(*setup.base);

  std::vector<ComboResult> results(combos.size());
  const int workers = std::max(
      1, std::min(threads, static_cast<int>(combos.size())));
  std::atomic<int> next{0};
  auto work = [&]() {
    // One backend per worker; independent instances solve concurrently.
    std::unique_ptr<SolverBackend> backend = make_highs_backend();
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= static_cast<int>(combos.size())) break;
      try {
        results[i] = run_combo(setup, dispatch, *backend, options, i, combos[i]);
      } catch (const std::exception& e) {
        results[i].combo_index = i;
        results[i].levels = combos[i];
        results[i].ok = false;
        results[i].error = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int k = 0; k < workers; ++k) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  SweepResult out;
  out.ranked = std::move(results);
  for (const ComboResult& r : out.ranked) {
    if (!r.ok) ++out.failed;
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const ComboResult& a, const ComboResult& b) {
                     if (a.ok != b.ok) return a.ok;  // failures last
                     if (a.gross_benefit != b.gross_benefit) {
                       return a.gross_benefit > b.gross_benefit;
                     }
                     return a.combo_index < b.combo_index;
                   });
  return out;
}

SweepResult later_stage_scenario(
    const OosSetup& setup,
    const std::vector<std::pair<int, int>>& added_increments,
    const SolveOptions& options, int threads) {
  if (setup.base == nullptr) {
    throw std::invalid_argument("sweep setup has no base case");
  }
  OosSetup later = setup;
  for (const auto& [line, inc] : added_increments) {
    if (line < 0 || line >= static_cast<int>(setup.base->lines.size())) {
      throw std::invalid_argument("later-stage expansion names a line that "
                                  "does not exist in the case");
    }
    if (inc < 0 ||
        inc >= static_cast<int>(setup.base->catalog.increments.size())) {
      throw std::invalid_argument(
          "later-stage expansion uses an unknown increment");
    }
    const double delta = setup.base->catalog.increments[inc].delta_mw;
    later.expansion_caps[line] += delta;
    later.counterfactual_caps[line] += delta;
  }
  return sweep(later, options, threads);
}

DivergenceReport ex_ante_vs_ex_post(const SweepResult& sweep_result,
                                    const std::vector<double>& ex_ante_ratio,
                                    const std::vector<std::string>& ids,
                                    int bins) {
  if (sweep_result.ranked.empty()) {
    throw std::invalid_argument("sweep produced no combinations");
  }
  if (ids.size() != ex_ante_ratio.size()) {
    throw std::invalid_argument("participant id / ratio length mismatch");
  }
  if (bins <= 0) throw std::invalid_argument("histogram needs >= 1 bin");

  DivergenceReport rep;
  rep.bins = bins;
  rep.combos_failed = sweep_result.failed;
  rep.participants.reserve(ids.size());
  for (size_t b = 0; b < ids.size(); ++b) {
    ParticipantDivergence part;
    part.id = ids[b];
    part.ex_ante = ex_ante_ratio[b];
    part.histogram.assign(bins, 0);
    rep.participants.push_back(std::move(part));
  }

  const double bin_width = 100.0 / bins;
  bool first = true;
  for (const ComboResult& r : sweep_result.ranked) {
    if (!r.ok) continue;
    if (r.load_share.empty()) {
      ++rep.combos_without_beneficiaries;
      continue;
    }
    if (r.load_share.size() != ids.size()) {
      throw std::invalid_argument("sweep participant set mismatch");
    }
    ++rep.combos_used;
    for (size_t b = 0; b < ids.size(); ++b) {
      ParticipantDivergence& part = rep.participants[b];
      const double share = r.load_share[b];
      if (first || share < part.realized_min) part.realized_min = share;
      if (first || share > part.realized_max) part.realized_max = share;
      int bin = static_cast<int>(share / bin_width);
      if (bin >= bins) bin = bins - 1;  // share == 100 lands in the top bin
      if (bin < 0) bin = 0;
      ++part.histogram[bin];
    }
    first = false;
  }

  if (rep.combos_used == 0) {
    rep.no_realized_beneficiaries = true;
    return rep;
  }
  constexpr double kTol = 1e-9;
  for (ParticipantDivergence& part : rep.participants) {
    part.ex_ante_outside_range = part.ex_ante < part.realized_min - kTol ||
                                 part.ex_ante > part.realized_max + kTol;
  }
  return rep;
}

}  // namespace gridalloc
