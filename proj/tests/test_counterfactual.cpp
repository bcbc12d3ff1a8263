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

#include "doctest.h"
#include "toys.hpp"

using namespace gridalloc;

namespace {

struct Solved {
  SystemCase sys;
  ScenarioTree tree;
  DispatchData dd;
  std::unique_ptr<ExpansionModel> em;
  std::unique_ptr<SolverBackend> backend;
  SolveOptions options;
  ExpansionPlan plan;
  PrimalDualSolution ref;
};

/// Classification toy solved to optimality with a root line selection.
/// Heap-allocated so the model's references to the case stay valid.
std::unique_ptr<Solved> solved_theorem_toy() {
  auto s = std::make_unique<Solved>();
  toys::TheoremToy toy = toys::theorem_toy(
      /*gas_invest=*/2000.0, /*diesel_invest=*/1000.0, /*wind_invest=*/200.0,
      /*leaf_scale=*/0.6);
  s->sys = std::move(toy.sys);
  s->tree = std::move(toy.tree);
  s->dd = full_resolution_dispatch(s->sys);
  s->em = std::make_unique<ExpansionModel>(s->sys, s->tree, s->dd);
  s->backend = make_highs_backend();
  s->options.mip_gap = 1e-9;
  s->plan = s->em->solve_mip(*s->backend, s->options);
  s->ref = s->em->fix_and_solve_lp(*s->backend, s->plan.w, s->options);
  return s;
}

}  // namespace

TEST_CASE("counterfactual objectives are ordered by flexibility") {
  std::unique_ptr<Solved> sp = solved_theorem_toy();
  Solved& s = *sp;
  bool root_selected = false;
  for (const LineSelection& sel : s.plan.selected) {
    if (sel.node == s.tree.root()) root_selected = true;
  }
  REQUIRE(root_selected);  // otherwise nothing to remove

  const InvestmentSubset subset = portfolio_subset(s.plan, *s.em);
  double obj[4];
  for (int opt = 1; opt <= 3; ++opt) {
    CounterfactualConfig cfg;
    cfg.option = static_cast<CounterfactualOption>(opt);
    const PrimalDualSolution cf = solve_counterfactual(
        *s.em, *s.backend, s.plan, s.ref, subset, cfg, s.options);
    obj[opt] = cf.objective;
  }
  const double scale = std::abs(s.ref.objective) + 1.0;
  CHECK(obj[1] <= obj[2] + 1e-6 * scale);
  CHECK(obj[2] <= obj[3] + 1e-6 * scale);
  CHECK(obj[3] <= s.ref.objective + 1e-6 * scale);
}

TEST_CASE("project subset covers one corridor, portfolio covers all") {
  std::unique_ptr<Solved> sp = solved_theorem_toy();
  Solved& s = *sp;
  const InvestmentSubset all = portfolio_subset(s.plan, *s.em);
  CHECK(all.scope == "portfolio");
  for (const LineSelection& sel : all.members) {
    CHECK(sel.node == s.tree.root());
  }
  const InvestmentSubset one = project_subset(s.plan, *s.em, 2);
  CHECK(one.scope == s.sys.lines[2].id);
  CHECK_FALSE(one.members.empty());
  // Lines without a first-stage selection cannot form a project.
  CHECK_THROWS_AS(project_subset(s.plan, *s.em, 0), std::invalid_argument);
}

TEST_CASE("subset cost uses the objective's path weights") {
  std::unique_ptr<Solved> sp = solved_theorem_toy();
  Solved& s = *sp;
  const InvestmentSubset all = portfolio_subset(s.plan, *s.em);
  double expect = 0.0;
  for (const LineSelection& sel : all.members) {
    expect += s.em->path_weight(sel.node) *
              s.sys.catalog.line_cost.at(sel.line)[sel.increment];
  }
  CHECK(subset_cost(all, *s.em) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("subset members must come from the reference plan") {
  std::unique_ptr<Solved> sp = solved_theorem_toy();
  Solved& s = *sp;
  InvestmentSubset bogus;
  bogus.scope = "bogus";
  bogus.members = {{s.tree.root(), 2, 0}};
  // Flip the reference selection off so the member is not selected.
  ExpansionPlan empty = s.plan;
  std::fill(empty.w.begin(), empty.w.end(), 0.0);
  empty.selected.clear();
  CounterfactualConfig cfg;
  CHECK_THROWS_AS(solve_counterfactual(*s.em, *s.backend, empty, s.ref, bogus,
                                       cfg, s.options),
                  std::invalid_argument);
}

TEST_CASE("frozen counterfactual pins generation to the reference build") {
  std::unique_ptr<Solved> sp = solved_theorem_toy();
  Solved& s = *sp;
  const InvestmentSubset subset = portfolio_subset(s.plan, *s.em);
  CounterfactualConfig cfg;
  cfg.option = CounterfactualOption::kFrozen;
  const PrimalDualSolution cf = solve_counterfactual(
      *s.em, *s.backend, s.plan, s.ref, subset, cfg, s.options);
  for (size_t i = 0; i < cf.build_mw.size(); ++i) {
    CHECK(cf.build_mw[i] == doctest::Approx(s.ref.build_mw[i]).epsilon(1e-9));
  }
}
