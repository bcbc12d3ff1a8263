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

#ifndef GRIDALLOC_SCENARIO_HPP_
#define GRIDALLOC_SCENARIO_HPP_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gridalloc {

/// One node of the scenario tree. Data fields hold values already resolved
/// for this node (the file loader applies growth factors and per-node costs
/// at ingestion, so the planner never re-derives them).
struct ScenarioNode {
  std::string id;
  std::optional<std::string> parent;  // absent for the root
  int depth = 1;                      // root has depth 1
  double probability = 1.0;

  // Resolved per-node data.
  double demand_scale = 1.0;             // multiplies the base demand profile
  std::vector<double> fuel_cost;         // $/MWh by technology index
  std::vector<double> invest_cost;       // $/MW-yr by technology index
  double rps = 0.0;                      // renewable share target in [0,1]
};

struct TreeValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Rooted scenario tree with per-node probabilities. Immutable once built;
/// safe to share read-only across threads.
class ScenarioTree {
 public:
  ScenarioTree() = default;
  static ScenarioTree from_nodes(std::vector<ScenarioNode> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty(); }
  const ScenarioNode& node(int idx) const { return nodes_.at(idx); }
  const std::vector<ScenarioNode>& nodes() const { return nodes_; }

  /// Index of the (unique) root, or -1 if none was found.
  int root() const { return root_; }
  /// Parent index, -1 for the root, -2 for a dangling parent id.
  int parent_of(int idx) const { return parent_.at(idx); }
  const std::vector<int>& children(int idx) const { return children_.at(idx); }
  int index_of(const std::string& id) const;  // -1 when unknown

  /// Max depth over all nodes (|Y|).
  int horizon() const;

  /// Nodes on the path from the root to `idx`, root first, `idx` last.
  /// Throws std::out_of_range for an unknown index and std::runtime_error
  /// when a dangling parent link is encountered.
  std::vector<int> path_to_root(int idx) const;

  /// Indices of the descendants of `idx`, including `idx` itself.
  std::vector<int> subtree(int idx) const;

 private:
  std::vector<ScenarioNode> nodes_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::map<std::string, int> index_;
  int root_ = -1;
};

/// Structural validation: unique root at depth 1 with probability 1, parent
/// links resolve, depths increase by one along edges, per-depth probability
/// sums equal 1, parent probability equals the sum over its children, and
/// the two-stage shape (no branching below depth 2). With `allow_multistage`
/// the shape violation is reported as a warning instead of an error.
TreeValidationReport validate_tree(const ScenarioTree& tree,
                                   bool allow_multistage = false);

/// Discount factor for stage y (1-based) with `period_years` years per stage:
///   zeta_y = (1+rate)^(-period*(y-1)) * sum_{k=0}^{period-1} (1+rate)^(-k)
double discount_factor(int y, double rate, int period_years);

/// Additive data adjustments carried by one level of an uncertainty
/// dimension. Absent fields leave the base case untouched.
struct DataOverride {
  std::optional<double> demand_scale;
  std::map<std::string, double> fuel_scale;    // by technology id
  std::map<std::string, double> invest_scale;  // by technology id
  std::optional<double> rps;
};

struct GridLevel {
  std::string name;  // "low" / "medium" / "high"
  DataOverride data;
};

struct GridDimension {
  std::string name;
  std::vector<GridLevel> levels;  // exactly 3
};

struct UncertaintyGrid {
  std::vector<GridDimension> dimensions;
};

/// Full Cartesian product of level indices, lexicographic with the first
/// dimension slowest. Throws std::invalid_argument if any dimension does
/// not have exactly 3 levels.
std::vector<std::vector<int>> enumerate_grid(const UncertaintyGrid& grid);

}  // namespace gridalloc

#endif  // GRIDALLOC_SCENARIO_HPP_
