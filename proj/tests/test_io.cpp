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

#include "gridalloc/io.hpp"

#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "toys.hpp"

using namespace gridalloc;

#ifndef GRIDALLOC_CASES_DIR
#define GRIDALLOC_CASES_DIR "cases"
#endif

namespace {
const std::string kDesk = std::string(GRIDALLOC_CASES_DIR) + "/desk";

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("bundled desk case loads and validates") {
  const SystemCase sys = load_case(kDesk + "/case.json");
  CHECK(sys.buses.size() == 8);
  CHECK(sys.lines.size() == 13);
  CHECK(sys.technologies.size() == 6);
  CHECK(sys.hours() == 168);
  CHECK(sys.catalog.increments.size() == 7);
  CHECK(validate_case(sys).empty());

  // Catalog economies of scale: per-unit cost declines from 0.61 to 0.24
  // $M/MW as increments grow (values prorated by a constant factor, so the
  // per-unit ratio is preserved).
  const std::vector<double>& costs = sys.catalog.line_cost.begin()->second;
  double prev = 1e30;
  for (size_t q = 0; q < costs.size(); ++q) {
    const double per_mw = costs[q] / sys.catalog.increments[q].delta_mw;
    CHECK(per_mw < prev);
    prev = per_mw;
  }
  // The shipped costs are the catalog values scaled by one constant, so
  // cost ratios match the published catalog exactly.
  CHECK(costs[6] / costs[0] == doctest::Approx(154.96 / 68.93).epsilon(1e-9));
  CHECK(costs[2] / costs[0] == doctest::Approx(78.34 / 68.93).epsilon(1e-9));

  const ScenarioTree tree = load_tree(kDesk + "/tree.json", sys);
  CHECK(tree.size() == 22);
  CHECK(tree.horizon() == 4);
  CHECK(validate_tree(tree).ok());

  const UncertaintyGrid g3 = load_grid(kDesk + "/grid3.json");
  CHECK(enumerate_grid(g3).size() == 27);
  const UncertaintyGrid g5 = load_grid(kDesk + "/grid5.json");
  CHECK(enumerate_grid(g5).size() == 243);
}

TEST_CASE("series table loader") {
  const std::string path = temp_path("ga_series.tsv");
  write_file(path,
             "# comment\n"
             "x\ty\n"
             "1.5\t2.5\n"
             "3\t4\n");
  const Eigen::MatrixXd m = load_series_table(path, {"y", "x"});
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == doctest::Approx(2.5));  // y first per requested order
  CHECK(m(1, 1) == doctest::Approx(3.0));

  CHECK_THROWS_AS(load_series_table(path, {"z"}), std::invalid_argument);
  write_file(path, "x\ty\n1\n");
  CHECK_THROWS_AS(load_series_table(path, {"x", "y"}), std::invalid_argument);
}

TEST_CASE("malformed case files raise input errors") {
  const std::string path = temp_path("ga_bad_case.json");
  write_file(path, "{ not json");
  CHECK_THROWS_AS(load_case(path), std::invalid_argument);
  write_file(path, "{}");
  CHECK_THROWS_AS(load_case(path), std::invalid_argument);
  CHECK_THROWS_AS(load_case("/definitely/missing.json"),
                  std::invalid_argument);
}

TEST_CASE("plan files round-trip by id") {
  const SystemCase sys = toys::two_bus_expandable(30.0, 100.0, 180.0);
  const ScenarioTree tree = toys::one_node_tree();
  const DispatchData dd = full_resolution_dispatch(sys);
  const ExpansionModel em(sys, tree, dd);

  ExpansionPlan plan;
  plan.w.assign(em.num_w(), 0.0);
  const int slot = em.w_slot(0, 0, 1);  // "big" increment at the root
  REQUIRE(slot >= 0);
  plan.w[slot] = 1.0;
  plan.selected.push_back({0, 0, 1});
  plan.objective = 42.0;

  const std::string path = temp_path("ga_plan.json");
  save_plan(path, plan, em);
  const ExpansionPlan loaded = load_plan(path, em);
  REQUIRE(loaded.w.size() == plan.w.size());
  CHECK(loaded.w == plan.w);
  REQUIRE(loaded.selected.size() == 1);
  CHECK(loaded.selected[0].line == 0);
  CHECK(loaded.selected[0].increment == 1);
  CHECK(loaded.objective == doctest::Approx(42.0));
}
