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

#include "gridalloc/benefits.hpp"

#include <cmath>

#include "doctest.h"
#include "gridalloc/counterfactual.hpp"
#include "toys.hpp"

using namespace gridalloc;

namespace {
SolveOptions tight() {
  SolveOptions o;
  o.mip_gap = 1e-9;
  return o;
}

void check_decomposition(const PrimalDualSolution& sol,
                         const ExpansionModel& em) {
  for (int n = 0; n < em.tree().size(); ++n) {
    const SurplusAccounts a = surplus_decomposition(sol, em, n);
    const double scale = std::abs(a.objective_term) + 1.0;
    CHECK(std::abs(a.residual) / scale <= 1e-6);
  }
}
}  // namespace

TEST_CASE("congested toy surplus accounts match hand arithmetic") {
  const SystemCase sys = toys::two_bus(30.0);
  const ScenarioTree tree = toys::one_node_tree();
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();
  const PrimalDualSolution sol = em.fix_and_solve_lp(*backend, {}, tight());

  // 30 MW flows a->b for 2 hours at prices (40, 5001).
  CHECK(congestion_rent(sol, em, 0) ==
        doctest::Approx(2 * 30 * (5001.0 - 40.0)).epsilon(1e-9));
  // Consumer surplus at b: (10000 - 5001) * 30 MW * 2 h.
  CHECK(load_surplus(sol, em, 1) ==
        doctest::Approx(2 * 30 * (10000.0 - 5001.0)).epsilon(1e-9));
  // The generator at a is marginal: zero per-unit operating profit.
  CHECK(generator_unit_profit(sol, em, 0, 0) ==
        doctest::Approx(0.0).epsilon(1e-9));
  // Shortfall account: (gamma_load - 5001) * 20 MW * 2 h.
  const SurplusAccounts a = surplus_decomposition(sol, em, 0);
  CHECK(a.shortfall == doctest::Approx(2 * 20 * (10000.0 - 5001.0)));
  check_decomposition(sol, em);
}

TEST_CASE("per-unit profit guards the zero-capacity quotient") {
  const SystemCase sys = toys::two_bus(100.0);
  const ScenarioTree tree = toys::one_node_tree();
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();
  const PrimalDualSolution sol = em.fix_and_solve_lp(*backend, {}, tight());
  // Bus b has no generator: capacity ~0 and production ~0 -> profit 0.
  CHECK(generator_unit_profit(sol, em, 1, 0) == doctest::Approx(0.0));

  PrimalDualSolution corrupt = sol;
  corrupt.p[corrupt.dims.nbgt(0, 1, 0, 0)] = 5.0;  // output without capacity
  CHECK_THROWS_AS(generator_unit_profit(corrupt, em, 1, 0),
                  std::domain_error);
}

TEST_CASE("generator classification by first-stage build pattern") {
  CHECK(classify_generator(10.0, 10.0, 1e-3) == GenClass::kZeroBenefit);
  CHECK(classify_generator(10.0, 0.0, 1e-3) == GenClass::kBeneficiary);
  CHECK(classify_generator(0.0, 10.0, 1e-3) == GenClass::kLoser);
  CHECK(classify_generator(0.0, 0.0, 1e-3) == GenClass::kIndeterminate);
}

TEST_CASE("theorem suite: classifications imply benefit signs") {
  // Three parameterizations of the 3-bus toy; each solved plan is compared
  // against its option-2 counterfactual. A (bus, tech) built in both runs
  // earns the zero-profit level in both, so its benefit delta vanishes;
  // built only with (without) the expansion, existing units gain (lose).
  struct Params {
    double gas_invest, diesel_invest, wind_invest, leaf_scale;
  };
  const std::vector<Params> cases = {
      {2000.0, 1000.0, 200.0, 0.6},
      {1800.0, 900.0, 250.0, 0.6},
      {2400.0, 1150.0, 150.0, 0.5},
  };
  bool saw_zero = false, saw_gain = false, saw_loss = false;
  int solved = 0;
  for (const Params& prm : cases) {
    toys::TheoremToy toy =
        toys::theorem_toy(prm.gas_invest, prm.diesel_invest, prm.wind_invest,
                          prm.leaf_scale);
    const DispatchData dd = full_resolution_dispatch(toy.sys);
    const ExpansionModel em(toy.sys, toy.tree, dd);
    auto backend = make_highs_backend();
    const ExpansionPlan plan = em.solve_mip(*backend, tight());
    if (plan.selected.empty()) continue;
    ++solved;
    const PrimalDualSolution ref =
        em.fix_and_solve_lp(*backend, plan.w, tight());
    const InvestmentSubset subset = portfolio_subset(plan, em);
    CounterfactualConfig cfg;  // option 2
    const PrimalDualSolution cf = solve_counterfactual(
        em, *backend, plan, ref, subset, cfg, tight());
    check_decomposition(ref, em);
    check_decomposition(cf, em);

    const BenefitReport rep = compute_benefit_report(ref, cf, em, "portfolio");
    const int techs = static_cast<int>(toy.sys.technologies.size());
    for (int b = 0; b < 3; ++b) {
      for (int g = 0; g < techs; ++g) {
        const double delta = rep.gen_unit_delta(b, g);
        const double scale = discounted_unit_investment(em, g);
        switch (rep.gen_class[b * techs + g]) {
          case GenClass::kZeroBenefit:
            CHECK(std::abs(delta) <= 1e-4 * scale);
            saw_zero = true;
            break;
          case GenClass::kBeneficiary:
            CHECK(delta >= -1e-4 * scale);
            if (delta > 1e-4 * scale) saw_gain = true;
            break;
          case GenClass::kLoser:
            CHECK(delta <= 1e-4 * scale);
            if (delta < -1e-4 * scale) saw_loss = true;
            break;
          case GenClass::kIndeterminate:
            break;
        }
      }
    }
  }
  CHECK(solved >= 2);  // the suite must actually exercise expansions
  CHECK(saw_zero);
  CHECK(saw_gain);
  CHECK(saw_loss);
}
