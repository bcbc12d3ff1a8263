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

#ifndef GRIDALLOC_TESTS_TOYS_HPP_
#define GRIDALLOC_TESTS_TOYS_HPP_

#include <vector>

#include "gridalloc/optimizer.hpp"
#include "gridalloc/scenario.hpp"
#include "gridalloc/system.hpp"

namespace toys {

/// Two buses, one generator at the reference bus, load at the other, one
/// line. With cap >= 50 the load is served at marginal cost; with cap 30
/// the line binds and 20 MW is curtailed at the top penalty price.
inline gridalloc::SystemCase two_bus(double line_cap) {
  gridalloc::SystemCase sys;
  sys.buses = {{"a", true}, {"b", false}};
  sys.lines = {{"ab", 0, 1, line_cap, 0.1}};
  sys.penalty.segments = {{0.0, 5001.0}};  // unbounded
  sys.penalty.gamma_line = 9251.0;
  sys.penalty.gamma_load = 10000.0;
  sys.technologies = {{"gen", false, 0.0, 10.0, 30.0, 1e6}};
  sys.fleet.existing.resize(2, 1);
  sys.fleet.existing << 200.0, 0.0;
  sys.fleet.availability = {Eigen::MatrixXd::Ones(2, 2)};
  sys.demand.resize(2, 2);
  sys.demand << 0.0, 0.0, 50.0, 50.0;
  sys.discount_rate = 0.0;
  sys.period_years = 1;
  return sys;
}

inline gridalloc::ScenarioTree one_node_tree(int techs = 1) {
  gridalloc::ScenarioNode root;
  root.id = "n0";
  root.fuel_cost.assign(techs, 30.0);
  root.invest_cost.assign(techs, 1e6);
  return gridalloc::ScenarioTree::from_nodes({root});
}

/// Two-bus case with an expandable line: 2 increments. Demand exceeds the
/// initial cap, so expansion is valuable whenever the increment cost is
/// below the avoided curtailment.
inline gridalloc::SystemCase two_bus_expandable(double line_cap,
                                                double cost_small,
                                                double cost_big) {
  gridalloc::SystemCase sys = two_bus(line_cap);
  sys.catalog.increments = {{"small", 20.0}, {"big", 40.0}};
  sys.catalog.line_cost[0] = {cost_small, cost_big};
  return sys;
}

/// Root + `leaves` children (two-stage). Probabilities sum to 1 per depth.
inline gridalloc::ScenarioTree two_stage_tree(int leaves, int techs,
                                              double fuel = 30.0,
                                              double invest = 1e6) {
  std::vector<gridalloc::ScenarioNode> nodes;
  gridalloc::ScenarioNode root;
  root.id = "n0";
  root.fuel_cost.assign(techs, fuel);
  root.invest_cost.assign(techs, invest);
  nodes.push_back(root);
  for (int i = 0; i < leaves; ++i) {
    gridalloc::ScenarioNode leaf;
    leaf.id = "s" + std::to_string(i + 1);
    leaf.parent = "n0";
    leaf.depth = 2;
    leaf.probability = 1.0 / leaves;
    leaf.fuel_cost.assign(techs, fuel);
    leaf.invest_cost.assign(techs, invest);
    nodes.push_back(std::move(leaf));
  }
  return gridalloc::ScenarioTree::from_nodes(std::move(nodes));
}

/// Three-bus loop a - b - c used by the generator-classification suite.
/// Bus c starts isolated (the a-c link has zero initial capacity and the
/// loop equation blocks the a-b-c detour); a root-stage selection of the
/// 100 MW a-c increment connects it from the second stage onward.
///
/// Techs are pinned to one bus each through availability: gas at a (200 MW
/// existing), diesel at c, wind at c (10 MW existing, on in even hours).
/// Load: 250 MW/h at a and 100 MW/h at c in the root year, scaled by
/// `leaf_scale` at the leaves. Curtailment is priced on elastic bands
/// (10 MW @ 300, 10 @ 500, 180 @ 1000, rest @ 5001 $/MWh), which gives
/// finite root-year margins. With the baseline (2000, 1000, 200, 0.6):
///   - wind at c is built at the root with and without the corridor
///     (zero-benefit class),
///   - gas at a is built at the root only WITH the corridor, because only
///     then do second-stage exports to c top up its root-year margin
///     (beneficiary),
///   - diesel at c is built at the root only WITHOUT the corridor, since
///     imports otherwise cover c's evening shortfall (loser).
struct TheoremToy {
  gridalloc::SystemCase sys;
  gridalloc::ScenarioTree tree;
};

inline TheoremToy theorem_toy(double gas_invest, double diesel_invest,
                              double wind_invest, double leaf_scale) {
  gridalloc::SystemCase sys;
  sys.buses = {{"a", true}, {"b", false}, {"c", false}};
  sys.lines = {{"ab", 0, 1, 500.0, 0.1}, {"bc", 1, 2, 500.0, 0.1},
               {"ac", 0, 2, 0.0, 0.1}};
  sys.catalog.increments = {{"inc100", 100.0}};
  sys.catalog.line_cost[2] = {1.0};
  sys.penalty.segments = {
      {10.0, 300.0}, {10.0, 500.0}, {180.0, 1000.0}, {0.0, 5001.0}};
  sys.penalty.gamma_line = 9251.0;
  sys.penalty.gamma_load = 10000.0;
  // Diesel's fuel price sits above the widest curtailment band (300) so it
  // never competes with imports at the leaves; its value is confined to the
  // deep-shortfall bands, which keeps the root-stage build comparisons
  // strict instead of degenerate.
  sys.technologies = {{"gas", false, 0.0, 0.0, 80.0, gas_invest},
                      {"diesel", false, 0.0, 0.0, 400.0, diesel_invest},
                      {"wind", true, 0.0, 0.0, 0.0, wind_invest}};
  sys.fleet.existing = Eigen::MatrixXd::Zero(3, 3);
  sys.fleet.existing(0, 0) = 200.0;  // gas at a
  sys.fleet.existing(2, 2) = 10.0;   // wind at c
  const int hours = 4;
  Eigen::MatrixXd gas_av = Eigen::MatrixXd::Zero(3, hours);
  gas_av.row(0).setOnes();
  Eigen::MatrixXd diesel_av = Eigen::MatrixXd::Zero(3, hours);
  diesel_av.row(2).setOnes();
  Eigen::MatrixXd wind_av = Eigen::MatrixXd::Zero(3, hours);
  for (int h = 0; h < hours; h += 2) wind_av(2, h) = 1.0;
  sys.fleet.availability = {gas_av, diesel_av, wind_av};
  sys.demand = Eigen::MatrixXd::Zero(3, hours);
  sys.demand.row(0).setConstant(250.0);
  sys.demand.row(2).setConstant(100.0);
  sys.discount_rate = 0.0;
  sys.period_years = 1;

  TheoremToy toy;
  toy.tree = two_stage_tree(7, 3);
  std::vector<gridalloc::ScenarioNode> nodes = toy.tree.nodes();
  for (gridalloc::ScenarioNode& n : nodes) {
    n.fuel_cost = {80.0, 400.0, 0.0};
    n.invest_cost = {gas_invest, diesel_invest, wind_invest};
    if (n.depth > 1) n.demand_scale = leaf_scale;
  }
  toy.tree = gridalloc::ScenarioTree::from_nodes(std::move(nodes));
  toy.sys = std::move(sys);
  return toy;
}

}  // namespace toys

#endif  // GRIDALLOC_TESTS_TOYS_HPP_
