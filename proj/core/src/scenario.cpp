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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gridalloc {

namespace {
constexpr double kProbTol = 1e-9;
}

ScenarioTree ScenarioTree::from_nodes(std::vector<ScenarioNode> nodes) {
  ScenarioTree tree;
  tree.nodes_ = std::move(nodes);
  const int n = tree.size();
  tree.parent_.assign(n, -1);
  tree.children_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] = tree.index_.emplace(tree.nodes_[i].id, i);
    if (!inserted) {
      throw std::invalid_argument("duplicate node id: " + tree.nodes_[i].id);
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto& nd = tree.nodes_[i];
    if (!nd.parent) {
      tree.parent_[i] = -1;
      if (tree.root_ < 0) tree.root_ = i;
    } else {
      auto it = tree.index_.find(*nd.parent);
      if (it == tree.index_.end()) {
        tree.parent_[i] = -2;  // dangling, reported by validate_tree
      } else {
        tree.parent_[i] = it->second;
        tree.children_[it->second].push_back(i);
      }
    }
  }
  return tree;
}

int ScenarioTree::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

int ScenarioTree::horizon() const {
  int h = 0;
  for (const auto& nd : nodes_) h = std::max(h, nd.depth);
  return h;
}

std::vector<int> ScenarioTree::path_to_root(int idx) const {
  if (idx < 0 || idx >= size()) {
    throw std::out_of_range("unknown node index " + std::to_string(idx));
  }
  std::vector<int> path;
  int cur = idx;
  while (cur >= 0) {
    path.push_back(cur);
    if (static_cast<int>(path.size()) > size()) {
      throw std::runtime_error("parent cycle detected in scenario tree");
    }
    cur = parent_[cur];
  }
  if (!path.empty() && parent_[path.back()] == -2) {
    throw std::runtime_error("dangling parent link at node " +
                             nodes_[path.back()].id);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> ScenarioTree::subtree(int idx) const {
  if (idx < 0 || idx >= size()) {
    throw std::out_of_range("unknown node index " + std::to_string(idx));
  }
  std::vector<int> out;
  std::vector<int> stack{idx};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    for (int c : children_[cur]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TreeValidationReport validate_tree(const ScenarioTree& tree,
                                   bool allow_multistage) {
  TreeValidationReport rep;
  if (tree.empty()) {
    rep.errors.push_back("tree is empty");
    return rep;
  }

  int roots = 0;
  for (const auto& nd : tree.nodes()) {
    if (!nd.parent) ++roots;
  }
  if (roots == 0) rep.errors.push_back("missing root node");
  if (roots > 1) rep.errors.push_back("multiple root nodes");

  const int root = tree.root();
  if (root >= 0) {
    const auto& r = tree.node(root);
    if (r.depth != 1) {
      rep.errors.push_back("root node " + r.id + " has depth " +
                           std::to_string(r.depth) + ", expected 1");
    }
    if (std::abs(r.probability - 1.0) > kProbTol) {
      rep.errors.push_back("root node probability is not 1");
    }
  }

  std::map<int, double> depth_sum;
  for (int i = 0; i < tree.size(); ++i) {
    const auto& nd = tree.node(i);
    depth_sum[nd.depth] += nd.probability;
    if (nd.probability < -kProbTol || nd.probability > 1.0 + kProbTol) {
      rep.errors.push_back("node " + nd.id + " probability outside [0,1]");
    }
    const int p = tree.parent_of(i);
    if (p == -2) {
      rep.errors.push_back("node " + nd.id + " references unknown parent " +
                           *nd.parent);
      continue;
    }
    if (p >= 0 && nd.depth != tree.node(p).depth + 1) {
      rep.errors.push_back("node " + nd.id + " depth " +
                           std::to_string(nd.depth) +
                           " is not parent depth + 1");
    }
    const auto& kids = tree.children(i);
    if (!kids.empty()) {
      double csum = 0.0;
      for (int c : kids) csum += tree.node(c).probability;
      if (std::abs(csum - nd.probability) > kProbTol) {
        std::ostringstream os;
        os << "node " << nd.id << " probability " << nd.probability
           << " != sum of children " << csum;
        rep.errors.push_back(os.str());
      }
      if (nd.depth >= 2 && kids.size() > 1) {
        std::string msg = "node " + nd.id + " at depth " +
                          std::to_string(nd.depth) +
                          " branches below the stage boundary";
        if (allow_multistage) {
          rep.warnings.push_back(msg);
        } else {
          rep.errors.push_back(msg);
        }
      }
    }
  }

  for (const auto& [depth, sum] : depth_sum) {
    if (std::abs(sum - 1.0) > kProbTol) {
      std::ostringstream os;
      os << "depth " << depth << " probability sum " << sum;
      rep.errors.push_back(os.str());
    }
  }
  return rep;
}

double discount_factor(int y, double rate, int period_years) {
  if (y < 1) throw std::invalid_argument("stage index must be >= 1");
  if (rate <= -1.0) throw std::invalid_argument("rate must be > -1");
  if (period_years < 1) throw std::invalid_argument("period_years must be >= 1");
  double within = 0.0;
  for (int k = 0; k < period_years; ++k) {
    within += std::pow(1.0 + rate, -k);
  }
  return std::pow(1.0 + rate, -period_years * (y - 1)) * within;
}

std::vector<std::vector<int>> enumerate_grid(const UncertaintyGrid& grid) {
  for (const auto& dim : grid.dimensions) {
    if (dim.levels.size() != 3) {
      throw std::invalid_argument("dimension " + dim.name + " has " +
                                  std::to_string(dim.levels.size()) +
                                  " levels, expected 3");
    }
  }
  const int d = static_cast<int>(grid.dimensions.size());
  std::vector<std::vector<int>> out;
  std::vector<int> combo(d, 0);
  while (true) {
    out.push_back(combo);
    int pos = d - 1;
    while (pos >= 0 && combo[pos] == 2) {
      combo[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++combo[pos];
  }
  return out;
}

}  // namespace gridalloc
