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

#include "gridalloc/scenario.hpp"

#include "doctest.h"
#include "toys.hpp"

using namespace gridalloc;

TEST_CASE("discount factors at 7.78% over 5-year stages") {
  // Frozen against an independent spreadsheet-style evaluation of the
  // closed form.
  CHECK(discount_factor(1, 0.0778, 5) ==
        doctest::Approx(4.328411184513899).epsilon(1e-12));
  CHECK(discount_factor(2, 0.0778, 5) ==
        doctest::Approx(2.976032120552953).epsilon(1e-12));
  CHECK(discount_factor(3, 0.0778, 5) ==
        doctest::Approx(2.046193581203761).epsilon(1e-12));
  CHECK(discount_factor(4, 0.0778, 5) ==
        doctest::Approx(1.4068760020579127).epsilon(1e-12));
  // Zero rate: each stage is worth its plain year count.
  CHECK(discount_factor(1, 0.0, 5) == doctest::Approx(5.0));
  CHECK(discount_factor(3, 0.0, 5) == doctest::Approx(5.0));
}

TEST_CASE("tree navigation") {
  ScenarioTree tree = toys::two_stage_tree(7, 1);
  CHECK(tree.size() == 8);
  CHECK(tree.root() == 0);
  CHECK(tree.horizon() == 2);
  CHECK(tree.parent_of(0) == -1);
  CHECK(tree.children(0).size() == 7);
  const int leaf = tree.index_of("s3");
  REQUIRE(leaf > 0);
  const std::vector<int> path = tree.path_to_root(leaf);
  REQUIRE(path.size() == 2);
  CHECK(path[0] == 0);
  CHECK(path[1] == leaf);
  CHECK(tree.subtree(0).size() == 8);
  CHECK(tree.subtree(leaf).size() == 1);
}

TEST_CASE("tree validation accepts the toy and rejects bad probabilities") {
  ScenarioTree good = toys::two_stage_tree(7, 1);
  CHECK(validate_tree(good).ok());

  std::vector<ScenarioNode> nodes = good.nodes();
  nodes[1].probability = 0.9;  // per-depth sum now exceeds 1
  ScenarioTree bad = ScenarioTree::from_nodes(nodes);
  CHECK_FALSE(validate_tree(bad).ok());
}

TEST_CASE("tree validation flags branching below depth 2") {
  std::vector<ScenarioNode> nodes;
  ScenarioNode root;
  root.id = "n0";
  nodes.push_back(root);
  ScenarioNode a;
  a.id = "a";
  a.parent = "n0";
  a.depth = 2;
  a.probability = 1.0;
  nodes.push_back(a);
  for (int i = 0; i < 2; ++i) {
    ScenarioNode c;
    c.id = "c" + std::to_string(i);
    c.parent = "a";
    c.depth = 3;
    c.probability = 0.5;
    nodes.push_back(c);
  }
  ScenarioTree tree = ScenarioTree::from_nodes(nodes);
  CHECK_FALSE(validate_tree(tree).ok());
  CHECK(validate_tree(tree, /*allow_multistage=*/true).ok());
}

TEST_CASE("grid enumeration is a lexicographic cartesian product") {
  UncertaintyGrid grid;
  for (int d = 0; d < 2; ++d) {
    GridDimension dim;
    dim.name = "d" + std::to_string(d);
    for (int l = 0; l < 3; ++l) dim.levels.push_back({"l", {}});
    grid.dimensions.push_back(dim);
  }
  const std::vector<std::vector<int>> combos = enumerate_grid(grid);
  REQUIRE(combos.size() == 9);
  CHECK(combos.front() == std::vector<int>{0, 0});
  CHECK(combos[1] == std::vector<int>{0, 1});
  CHECK(combos[3] == std::vector<int>{1, 0});
  CHECK(combos.back() == std::vector<int>{2, 2});

  grid.dimensions[0].levels.pop_back();
  CHECK_THROWS_AS(enumerate_grid(grid), std::invalid_argument);
}
