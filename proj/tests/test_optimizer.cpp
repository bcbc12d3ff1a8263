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

#include "gridalloc/optimizer.hpp"

#include <cmath>

#include "doctest.h"
#include "toys.hpp"

using namespace gridalloc;

namespace {
SolveOptions tight() {
  SolveOptions o;
  o.mip_gap = 1e-9;
  return o;
}
}  // namespace

TEST_CASE("uncongested two-bus dispatch prices at marginal cost") {
  const SystemCase sys = toys::two_bus(100.0);
  const ScenarioTree tree = toys::one_node_tree();
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();

  const ExpansionPlan plan = em.solve_mip(*backend, tight());
  const PrimalDualSolution sol =
      em.fix_and_solve_lp(*backend, plan.w, tight());
  // Hand-solved: serve 50 MW for 2 hours at value 10000, cost 40.
  CHECK(sol.objective == doctest::Approx(996000.0).epsilon(1e-9));
  CHECK(sol.pi[sol.dims.nbt(0, 0, 0)] == doctest::Approx(40.0));
  CHECK(sol.pi[sol.dims.nbt(0, 1, 0)] == doctest::Approx(40.0));
  CHECK(sol.curtailment(0, 1, 0) == doctest::Approx(0.0));

  const KktReport kkt = verify_kkt(sol, em);
  CHECK(kkt.max_stationarity_violation <= 1e-6);
  CHECK(kkt.max_complementarity_violation <= 1e-6);
}

TEST_CASE("congested two-bus dispatch curtails at the penalty price") {
  const SystemCase sys = toys::two_bus(30.0);
  const ScenarioTree tree = toys::one_node_tree();
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();

  const PrimalDualSolution sol =
      em.fix_and_solve_lp(*backend, {}, tight());
  // Hand-solved: 30 MW delivered, 20 MW curtailed at 5001 $/MWh.
  CHECK(sol.objective == doctest::Approx(797560.0).epsilon(1e-9));
  CHECK(sol.pi[sol.dims.nbt(0, 1, 0)] == doctest::Approx(5001.0));
  CHECK(sol.curtailment(0, 1, 0) == doctest::Approx(20.0));
  CHECK(sol.sl[sol.dims.nlt(0, 0, 0)] == doctest::Approx(0.0));

  const KktReport kkt = verify_kkt(sol, em);
  CHECK(kkt.max_stationarity_violation <= 1e-6);
  CHECK(kkt.max_complementarity_violation <= 1e-6);
}

TEST_CASE("RPS without renewable technologies is rejected") {
  const SystemCase sys = toys::two_bus(100.0);
  std::vector<ScenarioNode> nodes = toys::one_node_tree().nodes();
  nodes[0].rps = 0.5;
  const ScenarioTree tree = ScenarioTree::from_nodes(nodes);
  const DispatchData dd = full_resolution_dispatch(sys);
  CHECK_THROWS_AS(ExpansionModel(sys, tree, dd), std::invalid_argument);
}

TEST_CASE("MIP matches exhaustive enumeration on a 6-binary toy") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 50000.0, 400000.0);
  const ScenarioTree tree = toys::two_stage_tree(2, 1);
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();

  REQUIRE(em.num_w() == 6);
  double best = -1e300;
  std::vector<double> best_w;
  for (int mask = 0; mask < (1 << 6); ++mask) {
    std::vector<double> w(6, 0.0);
    for (int i = 0; i < 6; ++i) w[i] = (mask >> i) & 1;
    const PrimalDualSolution sol = em.fix_and_solve_lp(*backend, w, tight());
    if (sol.objective > best + 1e-6) {
      best = sol.objective;
      best_w = w;
    }
  }

  const ExpansionPlan plan = em.solve_mip(*backend, tight());
  CHECK(plan.objective ==
        doctest::Approx(best).epsilon(1e-9));
  CHECK(plan.w == best_w);
}

TEST_CASE("strict-ancestor delay keeps root line capacity at its initial "
          "value") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
  const ScenarioTree tree = toys::two_stage_tree(2, 1);
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();

  // Selecting everything everywhere: the root's own selections only take
  // effect from its children onward.
  std::vector<double> w(em.num_w(), 1.0);
  const PrimalDualSolution sol = em.fix_and_solve_lp(*backend, w, tight());
  CHECK(sol.l_cap[sol.dims.nl(0, 0)] == doctest::Approx(30.0));
  // Children see the root's 20+40 MW additions but not their own.
  CHECK(sol.l_cap[sol.dims.nl(1, 0)] == doctest::Approx(90.0));
  CHECK(sol.l_cap[sol.dims.nl(2, 0)] == doctest::Approx(90.0));
}

TEST_CASE("zero-profit condition holds for generation built at the root") {
  // Root-year shortfalls force root builds; the aggregated reduced cost of
  // every such build must vanish.
  toys::TheoremToy toy = toys::theorem_toy(
      /*gas_invest=*/2000.0, /*diesel_invest=*/1000.0, /*wind_invest=*/200.0,
      /*leaf_scale=*/0.6);
  const DispatchData dd = full_resolution_dispatch(toy.sys);
  const ExpansionModel em(toy.sys, toy.tree, dd);
  auto backend = make_highs_backend();

  const ExpansionPlan plan = em.solve_mip(*backend, tight());
  const PrimalDualSolution sol =
      em.fix_and_solve_lp(*backend, plan.w, tight());
  bool built_any = false;
  for (int b = 0; b < 3; ++b) {
    for (int g = 0; g < 3; ++g) {
      if (sol.build_mw[sol.dims.nbg(0, b, g)] > 1e-3) built_any = true;
    }
  }
  REQUIRE(built_any);
  const KktReport kkt = verify_kkt(sol, em);
  CHECK(kkt.max_zero_profit_violation <= 1e-6);
}

TEST_CASE("zero demand produces an empty plan") {
  SystemCase sys = toys::two_bus_expandable(30.0, 100.0, 180.0);
  sys.demand.setZero();
  const ScenarioTree tree = toys::one_node_tree();
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);
  auto backend = make_highs_backend();
  const ExpansionPlan plan = em.solve_mip(*backend, tight());
  CHECK(plan.selected.empty());
}
