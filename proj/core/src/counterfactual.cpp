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

#include "gridalloc/counterfactual.hpp"

#include <stdexcept>

namespace gridalloc {

InvestmentSubset portfolio_subset(const ExpansionPlan& plan,
                                  const ExpansionModel& em) {
  InvestmentSubset out;
  out.scope = "portfolio";
  const int root = em.tree().root();
  for (const LineSelection& s : plan.selected) {
    if (s.node == root) out.members.push_back(s);
  }
  return out;
}

InvestmentSubset project_subset(const ExpansionPlan& plan,
                                const ExpansionModel& em, int line) {
  InvestmentSubset out;
  out.scope = em.system().lines.at(line).id;
  const int root = em.tree().root();
  for (const LineSelection& s : plan.selected) {
    if (s.node == root && s.line == line) out.members.push_back(s);
  }
  if (out.members.empty()) {
    throw std::invalid_argument("plan has no first-stage selection on line '" +
                                out.scope + "'");
  }
  return out;
}

double subset_cost(const InvestmentSubset& subset, const ExpansionModel& em) {
  double cost = 0.0;
  for (const LineSelection& s : subset.members) {
    cost += em.path_weight(s.node) *
            em.system().catalog.line_cost.at(s.line).at(s.increment);
  }
  return cost;
}

PrimalDualSolution solve_counterfactual(const ExpansionModel& em,
                                        SolverBackend& backend,
                                        const ExpansionPlan& reference,
                                        const PrimalDualSolution& reference_lp,
                                        const InvestmentSubset& subset,
                                        const CounterfactualConfig& config,
                                        const SolveOptions& options) {
  for (const LineSelection& s : subset.members) {
    const int slot = em.w_slot(s.node, s.line, s.increment);
    if (slot < 0 || reference.w.at(slot) < 0.5) {
      throw std::invalid_argument(
          "counterfactual subset member was not selected in the reference "
          "plan (line '" +
          em.system().lines.at(s.line).id + "')");
    }
  }

  if (config.option == CounterfactualOption::kFreeNetwork) {
    // Free every binary, force the subset's corridors out (all increment
    // levels), re-solve the MIP, then recover duals from the fixed LP.
    std::vector<double> fixed(em.num_w(), -1.0);
    for (const LineSelection& s : subset.members) {
      const int num_q = static_cast<int>(em.system().catalog.increments.size());
      for (int n = 0; n < em.dims().nodes; ++n) {
        if (!config.zero_all_years && n != em.tree().root()) continue;
        for (int q = 0; q < num_q; ++q) {
          const int slot = em.w_slot(n, s.line, q);
          if (slot >= 0) fixed[slot] = 0.0;
        }
      }
    }
    const ExpansionPlan cf = em.solve_partial_mip(backend, fixed, options);
    return em.fix_and_solve_lp(backend, cf.w, options);
  }

  std::vector<double> w_cf = reference.w;
  for (const LineSelection& s : subset.members) {
    w_cf[em.w_slot(s.node, s.line, s.increment)] = 0.0;
  }

  if (config.option == CounterfactualOption::kFrozen) {
    // Freeze generation investment and retirement at the reference values.
    std::vector<ExpansionModel::BoundOverride> overrides;
    const Dims& d = em.dims();
    for (int n = 0; n < d.nodes; ++n) {
      for (int b = 0; b < d.buses; ++b) {
        for (int g = 0; g < d.techs; ++g) {
          const double dg = reference_lp.build_mw.at(d.nbg(n, b, g));
          const double dr = reference_lp.retire_mw.at(d.nbg(n, b, g));
          overrides.push_back({em.col_build(n, b, g), dg, dg});
          overrides.push_back({em.col_retire(n, b, g), dr, dr});
        }
      }
    }
    return em.fix_and_solve_lp(backend, w_cf, overrides, options);
  }

  return em.fix_and_solve_lp(backend, w_cf, options);
}

}  // namespace gridalloc
