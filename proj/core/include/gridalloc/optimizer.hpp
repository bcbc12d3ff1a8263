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

#ifndef GRIDALLOC_OPTIMIZER_HPP_
#define GRIDALLOC_OPTIMIZER_HPP_

#include <string>
#include <vector>

#include "gridalloc/scenario.hpp"
#include "gridalloc/solver.hpp"
#include "gridalloc/system.hpp"
#include "gridalloc/timeseries.hpp"

namespace gridalloc {

/// Demand and availability resolved onto the chosen dispatch periods.
/// demand_base is unscaled by node growth; the model builder applies each
/// node's demand_scale.
struct DispatchData {
  std::vector<DispatchPeriod> periods;
  Eigen::MatrixXd demand_base;                // buses x periods, MW
  std::vector<Eigen::MatrixXd> availability;  // per tech: buses x periods
};

DispatchData resolve_dispatch(const SystemCase& sys, const TimeBlocks& blocks);
/// Every source hour becomes its own unit-weight period.
DispatchData full_resolution_dispatch(const SystemCase& sys);

/// Flattened index arithmetic shared by the model and its solutions.
struct Dims {
  int nodes = 0, buses = 0, techs = 0, periods = 0, lines = 0, segments = 0;
  int nbg(int n, int b, int g) const { return (n * buses + b) * techs + g; }
  int nbgt(int n, int b, int g, int t) const {
    return ((n * buses + b) * techs + g) * periods + t;
  }
  int nbt(int n, int b, int t) const { return (n * buses + b) * periods + t; }
  int nbti(int n, int b, int t, int i) const {
    return ((n * buses + b) * periods + t) * segments + i;
  }
  int nl(int n, int l) const { return n * lines + l; }
  int nlt(int n, int l, int t) const { return (n * lines + l) * periods + t; }
  int nt(int n, int t) const { return n * periods + t; }
};

/// One selected transmission increment.
struct LineSelection {
  int node = 0;
  int line = 0;
  int increment = 0;
};

struct ExpansionPlan {
  std::vector<LineSelection> selected;  // entries with w* = 1
  std::vector<double> w;                // all w columns, rounded to {0,1}
  std::vector<double> build_mw;         // dG flattened (n,b,g)
  std::vector<double> retire_mw;        // dGbar flattened (n,b,g)
  double objective = 0.0;
  double best_bound = 0.0;
};

/// Primal quantities and unscaled duals of one solved fixed-network LP.
struct PrimalDualSolution {
  Dims dims;
  double objective = 0.0;
  std::vector<double> p;      // (n,b,g,t) MW
  std::vector<double> z;      // (n,b,t,i) MW
  std::vector<double> sl;     // (n,l,t) MW
  std::vector<double> ni;     // (n,b,t) MW
  std::vector<double> g_cap;  // (n,b,g) MW cumulative
  std::vector<double> l_cap;  // (n,l) MW cumulative
  std::vector<double> build_mw;   // (n,b,g)
  std::vector<double> retire_mw;  // (n,b,g)
  std::vector<double> w;          // fixed values, per w column
  std::vector<double> pi;     // (n,b,t) $/MWh
  std::vector<double> theta;  // (n,b,g,t) $/MWh
  std::vector<double> nu;     // (n) $/MWh
  std::string basis_id;

  double curtailment(int n, int b, int t) const {
    double s = 0.0;
    for (int i = 0; i < dims.segments; ++i) s += z[dims.nbti(n, b, t, i)];
    return s;
  }
};

/// Two-stage expansion MIP over (case, tree, dispatch); also produces the
/// fixed-binary LP with unscaled duals. One instance is single-owner during
/// a solve; independent instances may solve concurrently.
class ExpansionModel {
 public:
  /// `stage_discount` holds zeta_y for y = 1..horizon; when empty it is
  /// derived from the case's discount rate and period length.
  ExpansionModel(const SystemCase& sys, const ScenarioTree& tree,
                 const DispatchData& dispatch,
                 std::vector<double> stage_discount = {});

  const LinearModel& model() const { return model_; }
  const Dims& dims() const { return dims_; }
  const SystemCase& system() const { return *sys_; }
  const ScenarioTree& tree() const { return *tree_; }
  const DispatchData& dispatch() const { return *dispatch_; }

  // Column lookups (flattened offsets into the LinearModel).
  int col_w(int n, int line, int q) const;  // -1 when line not expandable
  /// 0-based position in the w vector (plan.w / w_values), -1 when absent.
  int w_slot(int n, int line, int q) const {
    const int c = col_w(n, line, q);
    return c < 0 ? -1 : c - base_w_;
  }
  int num_w() const { return static_cast<int>(w_cols_.size()); }
  const std::vector<LineSelection>& w_index() const { return w_cols_; }
  int col_build(int n, int b, int g) const { return base_build_ + dims_.nbg(n, b, g); }
  int col_retire(int n, int b, int g) const { return base_retire_ + dims_.nbg(n, b, g); }
  int col_gcap(int n, int b, int g) const { return base_gcap_ + dims_.nbg(n, b, g); }
  int col_lcap(int n, int l) const { return base_lcap_ + dims_.nl(n, l); }
  int col_p(int n, int b, int g, int t) const { return base_p_ + dims_.nbgt(n, b, g, t); }
  int col_z(int n, int b, int t, int i) const { return base_z_ + dims_.nbti(n, b, t, i); }
  int col_ni(int n, int b, int t) const { return base_ni_ + dims_.nbt(n, b, t); }
  int col_sl(int n, int l, int t) const { return base_sl_ + dims_.nlt(n, l, t); }

  int row_capacity(int n, int b, int g, int t) const { return row_ca_ + dims_.nbgt(n, b, g, t); }
  int row_injection(int n, int b, int t) const { return row_ni_ + dims_.nbt(n, b, t); }
  int row_rps(int n) const { return row_rps_.at(n); }  // -1 when RPS inactive

  /// phi_n * zeta_{depth(n)}.
  double node_weight(int n) const { return node_weight_.at(n); }
  /// Sum of node_weight over the subtree rooted at n (capital-cost weight).
  double path_weight(int n) const { return path_weight_.at(n); }
  double period_weight(int t) const { return dispatch_->periods.at(t).weight; }
  double demand(int n, int b, int t) const;
  double stage_discount(int y) const { return stage_discount_.at(y - 1); }

  ExpansionPlan solve_mip(SolverBackend& backend,
                          const SolveOptions& options) const;
  /// Fixes w to `w_values` (one per w column), relaxes integrality, solves,
  /// and unscales the duals by the node/period weights.
  PrimalDualSolution fix_and_solve_lp(SolverBackend& backend,
                                      const std::vector<double>& w_values,
                                      const SolveOptions& options) const;
  /// Like fix_and_solve_lp but with extra column-bound overrides, used by
  /// the counterfactual builders. Pairs are (column, lower, upper).
  struct BoundOverride {
    int col;
    double lower, upper;
  };
  PrimalDualSolution fix_and_solve_lp(
      SolverBackend& backend, const std::vector<double>& w_values,
      const std::vector<BoundOverride>& overrides,
      const SolveOptions& options) const;

  /// Solve with some w fixed and the rest left binary (counterfactual
  /// option 3). `fixed` holds -1 for free columns, else the fixed value.
  ExpansionPlan solve_partial_mip(SolverBackend& backend,
                                  const std::vector<double>& fixed,
                                  const SolveOptions& options) const;

  void export_model(SolverBackend& backend, const std::string& path) const {
    backend.write_model(model_, path);
  }

 private:
  void build();
  PrimalDualSolution extract_solution(const SolverSolution& s) const;

  const SystemCase* sys_;
  const ScenarioTree* tree_;
  const DispatchData* dispatch_;
  std::vector<double> stage_discount_;
  Dims dims_;
  ShiftFactorMatrix sf_;
  LinearModel model_;

  std::vector<LineSelection> w_cols_;  // column order of w variables
  std::vector<int> w_col_base_;        // per (n, expandable e): base into cols
  std::vector<int> expandable_lines_;
  std::vector<int> expandable_pos_;    // line -> position or -1
  int base_w_ = 0, base_build_ = 0, base_retire_ = 0, base_gcap_ = 0,
      base_lcap_ = 0, base_p_ = 0, base_z_ = 0, base_ni_ = 0, base_sl_ = 0;
  int row_ca_ = 0, row_ni_ = 0;
  std::vector<int> row_rps_;
  std::vector<double> node_weight_, path_weight_;
};

struct KktReport {
  double max_stationarity_violation = 0.0;   // Eq-(8)-style reduced cost < 0
  double max_complementarity_violation = 0.0;  // p * reduced cost
  double max_zero_profit_violation = 0.0;    // node-0 builds, relative
  double price_scale = 0.0;
  std::vector<std::string> notes;
};

/// Stationarity/complementarity of the dispatch optimality condition and
/// the zero-profit condition on node-0 generation builds.
KktReport verify_kkt(const PrimalDualSolution& sol, const ExpansionModel& em,
                     double build_tol_mw = 1e-3);

/// Discounted unit investment cost of building tech g at node 0:
/// sum_n phi_n zeta_n * C^INV_{0,g}. The zero-profit level of Eq-style
/// operating profits.
double discounted_unit_investment(const ExpansionModel& em, int tech);

}  // namespace gridalloc

#endif  // GRIDALLOC_OPTIMIZER_HPP_
