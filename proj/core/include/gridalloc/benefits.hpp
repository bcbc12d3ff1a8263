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

#ifndef GRIDALLOC_BENEFITS_HPP_
#define GRIDALLOC_BENEFITS_HPP_

#include <string>
#include <vector>

#include "gridalloc/optimizer.hpp"

namespace gridalloc {

/// Expected discounted per-unit operating profit of (bus, tech), under the
/// expansion and counterfactual solutions, and their difference.
struct GeneratorUnitBenefit {
  int bus = 0;
  int tech = 0;
  double expansion_value = 0.0;       // $/MW
  double counterfactual_value = 0.0;  // $/MW
  double delta = 0.0;                 // expansion - counterfactual
};

/// Expected discounted consumer surplus at a bus and its difference.
struct LoadBenefit {
  int bus = 0;
  double expansion_value = 0.0;       // $
  double counterfactual_value = 0.0;  // $
  double delta = 0.0;
};

/// Per-node market-surplus accounts. The identity
///   objective_term = consumer_surplus + generator_profit + congestion_rent
///                  + shortfall + line_violation + rps_account - capital_cost
/// holds up to `residual` (floating-point only; the price terms cancel
/// algebraically). rps_account is the net RPS compliance charge collected
/// from consumers minus the credits paid to renewable generators.
struct SurplusAccounts {
  double consumer_surplus = 0.0;
  double generator_profit = 0.0;
  double congestion_rent = 0.0;
  double shortfall = 0.0;       // (gamma_load - segment price)-valued z
  double line_violation = 0.0;  // -gamma_line * sl (non-positive)
  double rps_account = 0.0;
  double capital_cost = 0.0;
  double objective_term = 0.0;  // the node's bracket in the objective
  double residual = 0.0;
};

enum class GenClass { kZeroBenefit, kBeneficiary, kLoser, kIndeterminate };
std::string to_string(GenClass c);

/// Expected discounted operating profit per MW (node-0 valuation). The
/// production/capacity quotient is taken as 0 when both are ~0; a capacity
/// ~0 with material production throws std::domain_error.
double generator_unit_profit(const PrimalDualSolution& sol,
                             const ExpansionModel& em, int bus, int tech);

GeneratorUnitBenefit generator_unit_benefit(const PrimalDualSolution& sol,
                                            const PrimalDualSolution& cf,
                                            const ExpansionModel& em, int bus,
                                            int tech);

/// Expected discounted consumer surplus at a bus.
double load_surplus(const PrimalDualSolution& sol, const ExpansionModel& em,
                    int bus);

LoadBenefit load_benefit(const PrimalDualSolution& sol,
                         const PrimalDualSolution& cf,
                         const ExpansionModel& em, int bus);

/// Undiscounted congestion rent collected at a node:
/// sum_t T_t sum_b pi * (-NI).
double congestion_rent(const PrimalDualSolution& sol, const ExpansionModel& em,
                       int node);

SurplusAccounts surplus_decomposition(const PrimalDualSolution& sol,
                                      const ExpansionModel& em, int node);

/// First-stage build-pattern classification: built in both runs means
/// existing units of the type earn exactly the zero-profit level in both,
/// so their benefit delta vanishes.
GenClass classify_generator(double build_expansion_mw,
                            double build_counterfactual_mw, double tol_mw);

/// Everything the allocation stage needs for one (expansion,
/// counterfactual) pair.
struct BenefitReport {
  std::string scope;
  std::vector<double> load_delta;          // per bus, $
  std::vector<double> load_expansion;      // per bus, $
  Eigen::MatrixXd gen_unit_delta;          // bus x tech, $/MW
  Eigen::MatrixXd gen_unit_expansion;      // bus x tech, $/MW
  std::vector<GenClass> gen_class;         // bus x tech, row-major
  double objective_delta = 0.0;            // reference LP - counterfactual
  double congestion_rent_delta = 0.0;      // discounted, all nodes
};

BenefitReport compute_benefit_report(const PrimalDualSolution& sol,
                                     const PrimalDualSolution& cf,
                                     const ExpansionModel& em,
                                     const std::string& scope);

}  // namespace gridalloc

#endif  // GRIDALLOC_BENEFITS_HPP_
