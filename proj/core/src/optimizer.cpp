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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gridalloc {

namespace {

std::string tag(const char* base, std::initializer_list<int> idx) {
  std::string s = base;
  for (int i : idx) {
    s.push_back('_');
    s += std::to_string(i);
  }
  return s;
}

}  // namespace

DispatchData resolve_dispatch(const SystemCase& sys, const TimeBlocks& blocks) {
  if (blocks.source_hours != sys.hours()) {
    throw std::invalid_argument("time blocks were clustered over " +
                                std::to_string(blocks.source_hours) +
                                " hours but the case has " +
                                std::to_string(sys.hours()));
  }
  DispatchData out;
  out.periods = blocks.dispatch_periods();
  const int buses = static_cast<int>(sys.buses.size());
  const int techs = static_cast<int>(sys.technologies.size());
  const int periods = static_cast<int>(out.periods.size());
  out.demand_base.resize(buses, periods);
  out.availability.assign(techs, Eigen::MatrixXd(buses, periods));
  for (int t = 0; t < periods; ++t) {
    const int h = out.periods[t].hour;
    if (h < 0 || h >= sys.hours()) {
      throw std::invalid_argument("dispatch period hour out of range");
    }
    out.demand_base.col(t) = sys.demand.col(h);
    for (int g = 0; g < techs; ++g) {
      out.availability[g].col(t) = sys.fleet.availability.at(g).col(h);
    }
  }
  return out;
}

DispatchData full_resolution_dispatch(const SystemCase& sys) {
  DispatchData out;
  const int hours = sys.hours();
  out.periods.reserve(hours);
  for (int h = 0; h < hours; ++h) out.periods.push_back({h, 1.0});
  out.demand_base = sys.demand;
  out.availability = sys.fleet.availability;
  return out;
}

ExpansionModel::ExpansionModel(const SystemCase& sys, const ScenarioTree& tree,
                               const DispatchData& dispatch,
                               std::vector<double> stage_discount)
    : sys_(&sys),
      tree_(&tree),
      dispatch_(&dispatch),
      stage_discount_(std::move(stage_discount)) {
  dims_.nodes = tree.size();
  dims_.buses = static_cast<int>(sys.buses.size());
  dims_.techs = static_cast<int>(sys.technologies.size());
  dims_.periods = static_cast<int>(dispatch.periods.size());
  dims_.lines = static_cast<int>(sys.lines.size());
  dims_.segments = static_cast<int>(sys.penalty.segments.size());
  if (dims_.nodes == 0) throw std::invalid_argument("empty scenario tree");
  if (dims_.periods == 0) throw std::invalid_argument("no dispatch periods");
  if (dispatch.demand_base.rows() != dims_.buses ||
      dispatch.demand_base.cols() != dims_.periods) {
    throw std::invalid_argument("dispatch demand dimensions mismatch");
  }
  if (static_cast<int>(dispatch.availability.size()) != dims_.techs) {
    throw std::invalid_argument("dispatch availability count mismatch");
  }
  if (sys.fleet.existing.rows() != dims_.buses ||
      sys.fleet.existing.cols() != dims_.techs) {
    throw std::invalid_argument("fleet dimensions mismatch");
  }

  const int horizon = tree.horizon();
  if (stage_discount_.empty()) {
    for (int y = 1; y <= horizon; ++y) {
      stage_discount_.push_back(
          discount_factor(y, sys.discount_rate, sys.period_years));
    }
  }
  if (static_cast<int>(stage_discount_.size()) < horizon) {
    throw std::invalid_argument("stage discount vector shorter than horizon");
  }

  node_weight_.resize(dims_.nodes);
  for (int n = 0; n < dims_.nodes; ++n) {
    const ScenarioNode& nd = tree.node(n);
    if (nd.probability <= 0.0) {
      throw std::invalid_argument("node '" + nd.id +
                                  "' has non-positive probability");
    }
    if (static_cast<int>(nd.fuel_cost.size()) != dims_.techs ||
        static_cast<int>(nd.invest_cost.size()) != dims_.techs) {
      throw std::invalid_argument("node '" + nd.id +
                                  "' is missing per-technology data");
    }
    node_weight_[n] = nd.probability * stage_discount_.at(nd.depth - 1);
  }
  path_weight_.resize(dims_.nodes);
  for (int n = 0; n < dims_.nodes; ++n) {
    double s = 0.0;
    for (int m : tree.subtree(n)) s += node_weight_[m];
    path_weight_[n] = s;
  }
  for (int t = 0; t < dims_.periods; ++t) {
    if (dispatch.periods[t].weight <= 0.0) {
      throw std::invalid_argument("dispatch period with non-positive weight");
    }
  }

  sf_ = sys.shift_factors();
  build();
}

int ExpansionModel::col_w(int n, int line, int q) const {
  const int e = expandable_pos_.at(line);
  if (e < 0) return -1;
  const int num_e = static_cast<int>(expandable_lines_.size());
  const int num_q = static_cast<int>(sys_->catalog.increments.size());
  return base_w_ + (n * num_e + e) * num_q + q;
}

double ExpansionModel::demand(int n, int b, int t) const {
  return dispatch_->demand_base(b, t) * tree_->node(n).demand_scale;
}

void ExpansionModel::build() {
  const SystemCase& sys = *sys_;
  const ScenarioTree& tree = *tree_;
  const Dims& d = dims_;
  LinearModel& m = model_;
  m.sense = LinearModel::Sense::kMaximize;

  expandable_pos_.assign(d.lines, -1);
  for (int l = 0; l < d.lines; ++l) {
    if (sys.catalog.expandable(l)) {
      expandable_pos_[l] = static_cast<int>(expandable_lines_.size());
      expandable_lines_.push_back(l);
    }
  }
  const int num_e = static_cast<int>(expandable_lines_.size());
  const int num_q = static_cast<int>(sys.catalog.increments.size());

  bool any_renewable = false;
  for (const auto& tech : sys.technologies) any_renewable |= tech.is_renewable;
  for (int n = 0; n < d.nodes; ++n) {
    if (tree.node(n).rps > 0.0 && !any_renewable) {
      throw std::invalid_argument(
          "RPS target set but no renewable technology exists");
    }
  }

  // ---- Columns --------------------------------------------------------
  base_w_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    for (int e = 0; e < num_e; ++e) {
      const int l = expandable_lines_[e];
      const auto& costs = sys.catalog.line_cost.at(l);
      for (int q = 0; q < num_q; ++q) {
        m.add_col(0.0, 1.0, -path_weight_[n] * costs.at(q), true,
                  tag("w", {n, l, q}));
        w_cols_.push_back({n, l, q});
      }
    }
  }
  base_build_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    const auto& nd = tree.node(n);
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        m.add_col(0.0, kInf, -path_weight_[n] * nd.invest_cost[g], false,
                  tag("dG", {n, b, g}));
      }
    }
  }
  base_retire_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        m.add_col(0.0, kInf, 0.0, false, tag("dGbar", {n, b, g}));
      }
    }
  }
  base_gcap_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        m.add_col(0.0, kInf,
                  -node_weight_[n] * sys.technologies[g].c_fix, false,
                  tag("G", {n, b, g}));
      }
    }
  }
  base_lcap_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    for (int l = 0; l < d.lines; ++l) {
      const double l0 = sys.lines[l].initial_capacity;
      // Root capacity and non-expandable lines are fixed to the initial
      // value; expanded lines get an equality row below.
      const bool fixed = (n == tree.root()) || expandable_pos_[l] < 0;
      m.add_col(fixed ? l0 : 0.0, fixed ? l0 : kInf, 0.0, false,
                tag("L", {n, l}));
    }
  }
  base_p_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    const auto& nd = tree.node(n);
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        const double mc = sys.technologies[g].c_vom + nd.fuel_cost[g];
        for (int t = 0; t < d.periods; ++t) {
          m.add_col(0.0, kInf,
                    -node_weight_[n] * dispatch_->periods[t].weight * mc,
                    false, tag("p", {n, b, g, t}));
        }
      }
    }
  }
  base_z_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int t = 0; t < d.periods; ++t) {
        for (int i = 0; i < d.segments; ++i) {
          m.add_col(0.0, kInf,
                    -node_weight_[n] * dispatch_->periods[t].weight *
                        sys.penalty.segments[i].price,
                    false, tag("z", {n, b, t, i}));
        }
      }
    }
  }
  base_ni_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int t = 0; t < d.periods; ++t) {
        m.add_col(-kInf, kInf, 0.0, false, tag("NI", {n, b, t}));
      }
    }
  }
  base_sl_ = m.num_cols();
  for (int n = 0; n < d.nodes; ++n) {
    for (int l = 0; l < d.lines; ++l) {
      for (int t = 0; t < d.periods; ++t) {
        m.add_col(0.0, kInf,
                  -node_weight_[n] * dispatch_->periods[t].weight *
                      sys.penalty.gamma_line,
                  false, tag("sl", {n, l, t}));
      }
    }
  }

  // Constant served-energy value term of the objective.
  for (int n = 0; n < d.nodes; ++n) {
    for (int t = 0; t < d.periods; ++t) {
      for (int b = 0; b < d.buses; ++b) {
        m.offset += node_weight_[n] * dispatch_->periods[t].weight *
                    sys.penalty.gamma_load * demand(n, b, t);
      }
    }
  }

  // ---- Rows -----------------------------------------------------------
  // Capacity limit: p - CA*G <= 0.
  row_ca_ = m.num_rows();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        for (int t = 0; t < d.periods; ++t) {
          const int r = m.add_row(-kInf, 0.0, tag("ca", {n, b, g, t}));
          m.add_entry(r, col_p(n, b, g, t), 1.0);
          const double ca = dispatch_->availability[g](b, t);
          if (ca != 0.0) m.add_entry(r, col_gcap(n, b, g), -ca);
        }
      }
    }
  }
  // Injection definition: NI - sum_g p - sum_i z = -D.
  row_ni_ = m.num_rows();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int t = 0; t < d.periods; ++t) {
        const double rhs = -demand(n, b, t);
        const int r = m.add_row(rhs, rhs, tag("ni", {n, b, t}));
        m.add_entry(r, col_ni(n, b, t), 1.0);
        for (int g = 0; g < d.techs; ++g) {
          m.add_entry(r, col_p(n, b, g, t), -1.0);
        }
        for (int i = 0; i < d.segments; ++i) {
          m.add_entry(r, col_z(n, b, t, i), -1.0);
        }
      }
    }
  }
  // Renewable portfolio standard per node (rows exist whenever a renewable
  // technology is present so nu is always well-defined).
  row_rps_.assign(d.nodes, -1);
  if (any_renewable) {
    for (int n = 0; n < d.nodes; ++n) {
      double target = 0.0;
      for (int t = 0; t < d.periods; ++t) {
        for (int b = 0; b < d.buses; ++b) {
          target += dispatch_->periods[t].weight * tree.node(n).rps *
                    demand(n, b, t);
        }
      }
      const int r = m.add_row(target, kInf, tag("rps", {n}));
      row_rps_[n] = r;
      for (int t = 0; t < d.periods; ++t) {
        for (int b = 0; b < d.buses; ++b) {
          for (int g = 0; g < d.techs; ++g) {
            if (!sys.technologies[g].is_renewable) continue;
            m.add_entry(r, col_p(n, b, g, t), dispatch_->periods[t].weight);
          }
        }
      }
    }
  }
  // Cumulative transmission capacity (in service one stage after the build
  // decision: builds at node n' serve strict descendants of n').
  for (int n = 0; n < d.nodes; ++n) {
    if (n == tree.root()) continue;
    for (int e = 0; e < num_e; ++e) {
      const int l = expandable_lines_[e];
      const int r = m.add_row(sys.lines[l].initial_capacity,
                              sys.lines[l].initial_capacity,
                              tag("lcap", {n, l}));
      m.add_entry(r, col_lcap(n, l), 1.0);
      for (int np : tree.path_to_root(tree.parent_of(n))) {
        for (int q = 0; q < num_q; ++q) {
          m.add_entry(r, col_w(np, l, q),
                      -sys.catalog.increments[q].delta_mw);
        }
      }
    }
  }
  // Cumulative generation capacity.
  for (int n = 0; n < d.nodes; ++n) {
    const std::vector<int> path = tree.path_to_root(n);
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        const double g0 = sys.fleet.existing(b, g);
        const int r = m.add_row(g0, g0, tag("gcap", {n, b, g}));
        m.add_entry(r, col_gcap(n, b, g), 1.0);
        for (int np : path) {
          m.add_entry(r, col_build(np, b, g), -1.0);
          m.add_entry(r, col_retire(np, b, g), 1.0);
        }
      }
    }
  }
  // Power balance per (n, t).
  for (int n = 0; n < d.nodes; ++n) {
    for (int t = 0; t < d.periods; ++t) {
      const int r = m.add_row(0.0, 0.0, tag("bal", {n, t}));
      for (int b = 0; b < d.buses; ++b) {
        m.add_entry(r, col_ni(n, b, t), 1.0);
      }
    }
  }
  // Soft flow limits, split into the two one-sided halves:
  //   sum_b SF*NI - L - sl <= 0 and sum_b SF*NI + L + sl >= 0.
  for (int n = 0; n < d.nodes; ++n) {
    for (int l = 0; l < d.lines; ++l) {
      for (int t = 0; t < d.periods; ++t) {
        const int up = m.add_row(-kInf, 0.0, tag("fup", {n, l, t}));
        const int lo = m.add_row(0.0, kInf, tag("flo", {n, l, t}));
        for (size_t c = 0; c < sf_.bus_columns.size(); ++c) {
          const double v = sf_.entries(l, static_cast<Eigen::Index>(c));
          if (v == 0.0) continue;
          const int col = col_ni(n, sf_.bus_columns[c], t);
          m.add_entry(up, col, v);
          m.add_entry(lo, col, v);
        }
        m.add_entry(up, col_lcap(n, l), -1.0);
        m.add_entry(up, col_sl(n, l, t), -1.0);
        m.add_entry(lo, col_lcap(n, l), 1.0);
        m.add_entry(lo, col_sl(n, l, t), 1.0);
      }
    }
  }
  // System-wide curtailment segment caps.
  for (int n = 0; n < d.nodes; ++n) {
    for (int t = 0; t < d.periods; ++t) {
      for (int i = 0; i < d.segments; ++i) {
        if (sys.penalty.segments[i].unbounded()) continue;
        const int r =
            m.add_row(-kInf, sys.penalty.segments[i].cap_mw, tag("zcap", {n, t, i}));
        for (int b = 0; b < d.buses; ++b) {
          m.add_entry(r, col_z(n, b, t, i), 1.0);
        }
      }
    }
  }
}

ExpansionPlan ExpansionModel::solve_mip(SolverBackend& backend,
                                        const SolveOptions& options) const {
  return solve_partial_mip(
      backend, std::vector<double>(w_cols_.size(), -1.0), options);
}

ExpansionPlan ExpansionModel::solve_partial_mip(
    SolverBackend& backend, const std::vector<double>& fixed,
    const SolveOptions& options) const {
  if (static_cast<int>(fixed.size()) != num_w()) {
    throw std::invalid_argument("fixed w vector has wrong length");
  }
  LinearModel m = model_;
  for (int c = 0; c < num_w(); ++c) {
    if (fixed[c] >= 0.0) {
      m.col_lower[base_w_ + c] = fixed[c];
      m.col_upper[base_w_ + c] = fixed[c];
    }
  }
  const SolverSolution s = backend.solve(m, options);
  if (s.status != SolveStatus::kOptimal) {
    throw std::runtime_error("expansion solve failed: " + s.message);
  }
  ExpansionPlan plan;
  plan.objective = s.objective;
  plan.best_bound = s.best_bound;
  plan.w.resize(num_w());
  for (int c = 0; c < num_w(); ++c) {
    const double v = s.col_value[base_w_ + c];
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6) {
      throw std::runtime_error("fractional value for binary column " +
                               model_.col_name[base_w_ + c]);
    }
    plan.w[c] = r;
    if (r > 0.5) plan.selected.push_back(w_cols_[c]);
  }
  const int nbg = dims_.nodes * dims_.buses * dims_.techs;
  plan.build_mw.assign(s.col_value.begin() + base_build_,
                       s.col_value.begin() + base_build_ + nbg);
  plan.retire_mw.assign(s.col_value.begin() + base_retire_,
                        s.col_value.begin() + base_retire_ + nbg);
  return plan;
}

PrimalDualSolution ExpansionModel::fix_and_solve_lp(
    SolverBackend& backend, const std::vector<double>& w_values,
    const SolveOptions& options) const {
  return fix_and_solve_lp(backend, w_values, {}, options);
}

PrimalDualSolution ExpansionModel::fix_and_solve_lp(
    SolverBackend& backend, const std::vector<double>& w_values,
    const std::vector<BoundOverride>& overrides,
    const SolveOptions& options) const {
  if (static_cast<int>(w_values.size()) != num_w()) {
    throw std::invalid_argument("w vector has wrong length");
  }
  LinearModel m = model_;
  m.col_integer.assign(m.col_integer.size(), false);
  for (int c = 0; c < num_w(); ++c) {
    m.col_lower[base_w_ + c] = w_values[c];
    m.col_upper[base_w_ + c] = w_values[c];
  }
  for (const BoundOverride& o : overrides) {
    m.col_lower.at(o.col) = o.lower;
    m.col_upper.at(o.col) = o.upper;
  }
  const SolverSolution s = backend.solve(m, options);
  if (s.status != SolveStatus::kOptimal) {
    throw std::runtime_error("fixed-network LP failed: " + s.message);
  }
  if (!s.has_duals) {
    throw std::runtime_error("solver returned no duals for the LP");
  }
  return extract_solution(s);
}

PrimalDualSolution ExpansionModel::extract_solution(
    const SolverSolution& s) const {
  const Dims& d = dims_;
  PrimalDualSolution out;
  out.dims = d;
  out.objective = s.objective;
  out.basis_id = s.basis_id;

  auto slice = [&](int base, int count) {
    return std::vector<double>(s.col_value.begin() + base,
                               s.col_value.begin() + base + count);
  };
  const int nbg = d.nodes * d.buses * d.techs;
  out.p = slice(base_p_, nbg * d.periods);
  out.z = slice(base_z_, d.nodes * d.buses * d.periods * d.segments);
  out.sl = slice(base_sl_, d.nodes * d.lines * d.periods);
  out.ni = slice(base_ni_, d.nodes * d.buses * d.periods);
  out.g_cap = slice(base_gcap_, nbg);
  out.l_cap = slice(base_lcap_, d.nodes * d.lines);
  out.build_mw = slice(base_build_, nbg);
  out.retire_mw = slice(base_retire_, nbg);
  out.w = slice(base_w_, num_w());

  out.pi.resize(d.nodes * d.buses * d.periods);
  out.theta.resize(nbg * d.periods);
  out.nu.assign(d.nodes, 0.0);
  for (int n = 0; n < d.nodes; ++n) {
    const double nw = node_weight_[n];
    for (int t = 0; t < d.periods; ++t) {
      const double tw = dispatch_->periods[t].weight;
      for (int b = 0; b < d.buses; ++b) {
        out.pi[d.nbt(n, b, t)] =
            s.row_dual[row_injection(n, b, t)] / (nw * tw);
        for (int g = 0; g < d.techs; ++g) {
          out.theta[d.nbgt(n, b, g, t)] =
              s.row_dual[row_capacity(n, b, g, t)] / (nw * tw);
        }
      }
    }
    // The RPS row is written >=, so its shadow price is non-positive at a
    // binding optimum; nu is its magnitude.
    if (row_rps_[n] >= 0) out.nu[n] = -s.row_dual[row_rps_[n]] / nw;
  }
  return out;
}

KktReport verify_kkt(const PrimalDualSolution& sol, const ExpansionModel& em,
                     double build_tol_mw) {
  const Dims& d = sol.dims;
  const SystemCase& sys = em.system();
  const ScenarioTree& tree = em.tree();
  KktReport rep;

  for (int n = 0; n < d.nodes; ++n) {
    const auto& nd = tree.node(n);
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        const double mc = sys.technologies[g].c_vom + nd.fuel_cost[g];
        const bool renewable = sys.technologies[g].is_renewable;
        for (int t = 0; t < d.periods; ++t) {
          const double rc = mc + sol.theta[d.nbgt(n, b, g, t)] -
                            sol.pi[d.nbt(n, b, t)] -
                            (renewable ? sol.nu[n] : 0.0);
          rep.max_stationarity_violation =
              std::max(rep.max_stationarity_violation, -rc);
          rep.max_complementarity_violation =
              std::max(rep.max_complementarity_violation,
                       std::abs(sol.p[d.nbgt(n, b, g, t)] * rc));
        }
      }
    }
  }

  // Zero-profit condition on first-stage generation builds: the discounted
  // inframarginal rents of a built unit exactly recover its investment and
  // fixed costs.
  const int root = tree.root();
  for (int g = 0; g < d.techs; ++g) {
    const double scale =
        em.path_weight(root) *
        (tree.node(root).invest_cost[g] + sys.technologies[g].c_fix);
    rep.price_scale = std::max(rep.price_scale, scale);
    for (int b = 0; b < d.buses; ++b) {
      if (sol.build_mw[d.nbg(root, b, g)] <= build_tol_mw) continue;
      double net = 0.0;
      for (int n = 0; n < d.nodes; ++n) {
        double rent = 0.0;
        for (int t = 0; t < d.periods; ++t) {
          rent += em.period_weight(t) * em.dispatch().availability[g](b, t) *
                  sol.theta[d.nbgt(n, b, g, t)];
        }
        net += em.node_weight(n) *
               (tree.node(root).invest_cost[g] + sys.technologies[g].c_fix -
                rent);
      }
      const double rel = std::abs(net) / std::max(1.0, scale);
      if (rel > rep.max_zero_profit_violation) {
        rep.max_zero_profit_violation = rel;
      }
      if (rel > 1e-6) {
        rep.notes.push_back("zero-profit residual " + std::to_string(net) +
                            " $ for build at bus " + std::to_string(b) +
                            " tech " + std::to_string(g));
      }
    }
  }
  return rep;
}

double discounted_unit_investment(const ExpansionModel& em, int tech) {
  const int root = em.tree().root();
  return em.path_weight(root) * em.tree().node(root).invest_cost.at(tech);
}

}  // namespace gridalloc
