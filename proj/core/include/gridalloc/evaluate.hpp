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

#ifndef GRIDALLOC_EVALUATE_HPP_
#define GRIDALLOC_EVALUATE_HPP_

#include <string>
#include <vector>

#include "gridalloc/optimizer.hpp"
#include "gridalloc/scenario.hpp"
#include "gridalloc/system.hpp"

namespace gridalloc {

/// Cumulative line capacities (MW per line) after the first-stage
/// selections of `plan`, excluding any member of `removed`.
std::vector<double> first_stage_capacities(
    const ExpansionPlan& plan, const ExpansionModel& em,
    const std::vector<LineSelection>& removed = {});

/// Applies one grid combination to the base case: demand scales multiply,
/// fuel/investment scales multiply the technology base costs, RPS
/// overrides replace (the last dimension that sets one wins).
struct ResolvedCombo {
  double demand_scale = 1.0;
  std::vector<double> fuel_cost;    // per tech, $/MWh
  std::vector<double> invest_cost;  // per tech, $/MW-yr
  double rps = 0.0;
  std::string label;                // e.g. "load=low fuel=high"
};
ResolvedCombo resolve_combo(const SystemCase& sys, const UncertaintyGrid& grid,
                            const std::vector<int>& levels);

/// One paired out-of-sample evaluation setup: the same full-hourly case
/// solved with and without the first-stage expansion, over every grid
/// combination.
struct OosSetup {
  const SystemCase* base = nullptr;  // full-hourly case (no clustering)
  UncertaintyGrid grid;
  std::vector<double> expansion_caps;       // per line, MW
  std::vector<double> counterfactual_caps;  // per line, MW
  bool frozen_fleet = false;  // disable single-year generation recourse
};

struct ComboResult {
  int combo_index = -1;
  std::vector<int> levels;
  bool ok = false;
  std::string error;
  double gross_benefit = 0.0;            // objective difference, $
  std::vector<double> load_delta;        // per bus, $
  Eigen::MatrixXd gen_unit_delta;        // bus x tech, $/MW
  std::vector<double> load_share;        // percent; empty when no beneficiary
};

/// Results ranked by gross benefit (descending, ties by combo index).
struct SweepResult {
  std::vector<ComboResult> ranked;
  int failed = 0;
};

/// Runs the paired LPs for every combination in a worker pool. Failures
/// are recorded per combo and do not abort the sweep; output ordering is
/// deterministic.
SweepResult sweep(const OosSetup& setup, const SolveOptions& options,
                  int threads = 1);

/// Re-evaluates after adding later-stage increments (line, increment index)
/// to both networks. Throws std::invalid_argument on an unknown line or
/// increment.
SweepResult later_stage_scenario(
    const OosSetup& setup,
    const std::vector<std::pair<int, int>>& added_increments,
    const SolveOptions& options, int threads = 1);

struct ParticipantDivergence {
  std::string id;
  double ex_ante = 0.0;  // percent
  double realized_min = 0.0;
  double realized_max = 0.0;
  bool ex_ante_outside_range = false;
  std::vector<int> histogram;  // fixed bins over [0, 100] percent
};

struct DivergenceReport {
  std::vector<ParticipantDivergence> participants;
  int bins = 0;
  int combos_used = 0;
  int combos_failed = 0;
  int combos_without_beneficiaries = 0;
  bool no_realized_beneficiaries = false;
};

/// Compares realized load shares against the ex ante ratios (percent, one
/// per bus). Throws std::invalid_argument on an empty sweep or mismatched
/// participant sets.
DivergenceReport ex_ante_vs_ex_post(const SweepResult& sweep_result,
                                    const std::vector<double>& ex_ante_ratio,
                                    const std::vector<std::string>& ids,
                                    int bins = 10);

}  // namespace gridalloc

#endif  // GRIDALLOC_EVALUATE_HPP_
