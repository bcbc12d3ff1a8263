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

#ifndef GRIDALLOC_ALLOCATION_HPP_
#define GRIDALLOC_ALLOCATION_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace gridalloc {

/// Cost-allocation ratios and dollar shares for one (policy, scope) pair.
/// Ratios are percentages. Benefit-cost ratios are NaN for participants with
/// no allocated cost ("no cost allocated"). By default losers get ratio 0;
/// with compensate_losers the ratios of harmed participants go negative
/// (delta / sum of positive deltas) and the column no longer sums to 100.
struct AllocationReport {
  std::string policy;  // "load-only" | "load+gen"
  std::string scope;   // project id | "portfolio"
  bool compensate_losers = false;
  double total_cost = 0.0;

  std::vector<double> load_ratio;  // percent per bus
  std::vector<double> load_cost;   // $ per bus
  std::vector<double> load_bcr;    // benefit / allocated cost

  // Populated for the load+gen policy only (buses x techs).
  Eigen::MatrixXd gen_ratio;
  Eigen::MatrixXd gen_cost;
  Eigen::MatrixXd gen_bcr;
};

/// Load-only allocation: r_b = [delta_b]+ / sum_b' [delta_b']+.
/// Throws std::domain_error("no beneficiaries") when every delta <= 0.
AllocationReport allocate_load_only(const std::vector<double>& load_deltas,
                                    double total_cost,
                                    const std::string& scope,
                                    bool compensate_losers = false);

/// Load + existing-generation allocation: the denominator pools
/// [delta_load]+ with [G0 * delta_gen]+ over every bus and technology.
/// gen_unit_deltas is $/MW (per-unit), existing_g0 is MW.
AllocationReport allocate_load_and_gen(const std::vector<double>& load_deltas,
                                       const Eigen::MatrixXd& gen_unit_deltas,
                                       const Eigen::MatrixXd& existing_g0,
                                       double total_cost,
                                       const std::string& scope,
                                       bool compensate_losers = false);

/// Per-bus comparison of summed project-level allocations against the
/// portfolio allocation, flagging participants charged under the project
/// scheme despite a negative portfolio benefit.
struct ScopeComparison {
  std::vector<std::string> project_ids;
  std::vector<double> summed_cost;       // per bus, over all projects
  std::vector<double> summed_ratio;      // percent of combined project cost
  std::vector<double> portfolio_cost;    // per bus
  std::vector<double> portfolio_ratio;   // percent
  std::vector<double> portfolio_delta;   // per-bus portfolio benefit, $
  std::vector<bool> flagged;
};

ScopeComparison compare_scopes(const std::vector<AllocationReport>& projects,
                               const AllocationReport& portfolio,
                               const std::vector<double>& portfolio_deltas);

}  // namespace gridalloc

#endif  // GRIDALLOC_ALLOCATION_HPP_
