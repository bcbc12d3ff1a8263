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

#ifndef GRIDALLOC_COUNTERFACTUAL_HPP_
#define GRIDALLOC_COUNTERFACTUAL_HPP_

#include <string>
#include <vector>

#include "gridalloc/optimizer.hpp"

namespace gridalloc {

/// The set of selected line investments whose cost is being allocated.
/// Members must have been selected (w* = 1) in the reference plan.
struct InvestmentSubset {
  std::vector<LineSelection> members;
  std::string scope;  // project id (e.g. a line id) or "portfolio"
};

/// All first-stage selections of the reference plan, tagged "portfolio".
InvestmentSubset portfolio_subset(const ExpansionPlan& plan,
                                  const ExpansionModel& em);
/// The node-0 selections of `plan` on one line (all increments chosen
/// there), tagged with the line id. Throws std::invalid_argument when the
/// plan selects nothing on that line at node 0.
InvestmentSubset project_subset(const ExpansionPlan& plan,
                                const ExpansionModel& em, int line);

/// Annualized investment cost of the subset's members, discounted with the
/// same path weights the objective uses.
double subset_cost(const InvestmentSubset& subset, const ExpansionModel& em);

enum class CounterfactualOption {
  kFrozen = 1,        // fix all other transmission AND generation decisions
  kReoptimizeGen = 2, // fix other transmission, re-optimize generation
  kFreeNetwork = 3,   // re-optimize generation and other transmission
};

struct CounterfactualConfig {
  CounterfactualOption option = CounterfactualOption::kReoptimizeGen;
  /// Option 3 only: also remove the subset's corridors at every node, not
  /// just node 0.
  bool zero_all_years = false;
};

/// Solves the counterfactual for `subset` against the reference plan.
/// `reference_lp` is only consulted for option 1 (its generation decisions
/// are frozen). Options 1-2 are LPs; option 3 re-solves a MIP and then the
/// fixed-binary LP. Throws std::invalid_argument when a subset member was
/// not selected in the reference plan.
PrimalDualSolution solve_counterfactual(const ExpansionModel& em,
                                        SolverBackend& backend,
                                        const ExpansionPlan& reference,
                                        const PrimalDualSolution& reference_lp,
                                        const InvestmentSubset& subset,
                                        const CounterfactualConfig& config,
                                        const SolveOptions& options);

}  // namespace gridalloc

#endif  // GRIDALLOC_COUNTERFACTUAL_HPP_
