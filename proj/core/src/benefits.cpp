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
#include <stdexcept>

namespace gridalloc {

namespace {
constexpr double kCapTolMw = 1e-6;
}

std::string to_string(GenClass c) {
  switch (c) {
    case GenClass::kZeroBenefit: return "zero-benefit";
    case GenClass::kBeneficiary: return "beneficiary";
    case GenClass::kLoser: return "loser";
    case GenClass::kIndeterminate: return "indeterminate";
  }
  return "?";
}

double generator_unit_profit(const PrimalDualSolution& sol,
                             const ExpansionModel& em, int bus, int tech) {
  const Dims& d = sol.dims;
  const Technology& t = em.system().technologies.at(tech);
  double total = 0.0;
  for (int n = 0; n < d.nodes; ++n) {
    const double fuel = em.tree().node(n).fuel_cost.at(tech);
    const double cap = sol.g_cap[d.nbg(n, bus, tech)];
    double inner = -t.c_fix;
    for (int tt = 0; tt < d.periods; ++tt) {
      const double prod = sol.p[d.nbgt(n, bus, tech, tt)];
      if (cap <= kCapTolMw) {
        if (prod > 1e-3) {
          throw std::domain_error(
              "production without capacity at bus " + std::to_string(bus) +
              " tech " + std::to_string(tech) + " node " + std::to_string(n));
        }
        continue;
      }
      const double margin = sol.pi[d.nbt(n, bus, tt)] - fuel - t.c_vom +
                            (t.is_renewable ? sol.nu[n] : 0.0);
      inner += em.period_weight(tt) * margin * (prod / cap);
    }
    total += em.node_weight(n) * inner;
  }
  return total;
}

GeneratorUnitBenefit generator_unit_benefit(const PrimalDualSolution& sol,
                                            const PrimalDualSolution& cf,
                                            const ExpansionModel& em, int bus,
                                            int tech) {
  GeneratorUnitBenefit out;
  out.bus = bus;
  out.tech = tech;
  out.expansion_value = generator_unit_profit(sol, em, bus, tech);
  out.counterfactual_value = generator_unit_profit(cf, em, bus, tech);
  out.delta = out.expansion_value - out.counterfactual_value;
  return out;
}

double load_surplus(const PrimalDualSolution& sol, const ExpansionModel& em,
                    int bus) {
  const Dims& d = sol.dims;
  const double gamma_load = em.system().penalty.gamma_load;
  double total = 0.0;
  for (int n = 0; n < d.nodes; ++n) {
    const double rps = em.tree().node(n).rps;
    double inner = 0.0;
    for (int t = 0; t < d.periods; ++t) {
      const double served = em.demand(n, bus, t) - sol.curtailment(n, bus, t);
      inner += em.period_weight(t) *
               (gamma_load - sol.pi[d.nbt(n, bus, t)] - sol.nu[n] * rps) *
               served;
    }
    total += em.node_weight(n) * inner;
  }
  return total;
}

LoadBenefit load_benefit(const PrimalDualSolution& sol,
                         const PrimalDualSolution& cf, const ExpansionModel& em,
                         int bus) {
  LoadBenefit out;
  out.bus = bus;
  out.expansion_value = load_surplus(sol, em, bus);
  out.counterfactual_value = load_surplus(cf, em, bus);
  out.delta = out.expansion_value - out.counterfactual_value;
  return out;
}

double congestion_rent(const PrimalDualSolution& sol, const ExpansionModel& em,
                       int node) {
  const Dims& d = sol.dims;
  double rent = 0.0;
  for (int t = 0; t < d.periods; ++t) {
    double inner = 0.0;
    for (int b = 0; b < d.buses; ++b) {
      inner -= sol.pi[d.nbt(node, b, t)] * sol.ni[d.nbt(node, b, t)];
    }
    rent += em.period_weight(t) * inner;
  }
  return rent;
}

SurplusAccounts surplus_decomposition(const PrimalDualSolution& sol,
                                      const ExpansionModel& em, int node) {
  const Dims& d = sol.dims;
  const SystemCase& sys = em.system();
  const ScenarioNode& nd = em.tree().node(node);
  SurplusAccounts acc;

  for (int b = 0; b < d.buses; ++b) {
    for (int t = 0; t < d.periods; ++t) {
      const double tw = em.period_weight(t);
      const double served = em.demand(node, b, t) - sol.curtailment(node, b, t);
      acc.consumer_surplus +=
          tw *
          (sys.penalty.gamma_load - sol.pi[d.nbt(node, b, t)] -
           sol.nu[node] * nd.rps) *
          served;
      for (int i = 0; i < d.segments; ++i) {
        acc.shortfall += tw *
                         (sys.penalty.gamma_load - sys.penalty.segments[i].price) *
                         sol.z[d.nbti(node, b, t, i)];
      }
      for (int g = 0; g < d.techs; ++g) {
        const Technology& tech = sys.technologies[g];
        const double margin = sol.pi[d.nbt(node, b, t)] - nd.fuel_cost[g] -
                              tech.c_vom +
                              (tech.is_renewable ? sol.nu[node] : 0.0);
        acc.generator_profit += tw * margin * sol.p[d.nbgt(node, b, g, t)];
      }
    }
    for (int g = 0; g < d.techs; ++g) {
      acc.generator_profit -=
          sys.technologies[g].c_fix * sol.g_cap[d.nbg(node, b, g)];
    }
  }
  for (int l = 0; l < d.lines; ++l) {
    for (int t = 0; t < d.periods; ++t) {
      acc.line_violation -= em.period_weight(t) * sys.penalty.gamma_line *
                            sol.sl[d.nlt(node, l, t)];
    }
  }
  acc.congestion_rent = congestion_rent(sol, em, node);

  // Net RPS compliance charge: consumers pay nu*RPS on served load;
  // renewable generators receive nu per MWh produced.
  double renewable_mwh = 0.0, served_mwh = 0.0;
  for (int t = 0; t < d.periods; ++t) {
    const double tw = em.period_weight(t);
    for (int b = 0; b < d.buses; ++b) {
      served_mwh += tw * (em.demand(node, b, t) - sol.curtailment(node, b, t));
      for (int g = 0; g < d.techs; ++g) {
        if (sys.technologies[g].is_renewable) {
          renewable_mwh += tw * sol.p[d.nbgt(node, b, g, t)];
        }
      }
    }
  }
  acc.rps_account = sol.nu[node] * (nd.rps * served_mwh - renewable_mwh);

  // Cumulative annualized capital charge along the node's path.
  for (int np : em.tree().path_to_root(node)) {
    for (const auto& [line, costs] : sys.catalog.line_cost) {
      for (size_t q = 0; q < costs.size(); ++q) {
        const int slot = em.w_slot(np, line, static_cast<int>(q));
        if (slot >= 0) acc.capital_cost += costs[q] * sol.w[slot];
      }
    }
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        acc.capital_cost += em.tree().node(np).invest_cost[g] *
                            sol.build_mw[d.nbg(np, b, g)];
      }
    }
  }

  // Node objective term computed directly from the primal quantities.
  double value = 0.0, op_cost = 0.0;
  for (int t = 0; t < d.periods; ++t) {
    const double tw = em.period_weight(t);
    for (int b = 0; b < d.buses; ++b) {
      value += tw * sys.penalty.gamma_load * em.demand(node, b, t);
      for (int g = 0; g < d.techs; ++g) {
        op_cost += tw *
                   (sys.technologies[g].c_vom + nd.fuel_cost[g]) *
                   sol.p[d.nbgt(node, b, g, t)];
      }
      for (int i = 0; i < d.segments; ++i) {
        op_cost += tw * sys.penalty.segments[i].price *
                   sol.z[d.nbti(node, b, t, i)];
      }
    }
    for (int l = 0; l < d.lines; ++l) {
      op_cost += tw * sys.penalty.gamma_line * sol.sl[d.nlt(node, l, t)];
    }
  }
  for (int b = 0; b < d.buses; ++b) {
    for (int g = 0; g < d.techs; ++g) {
      op_cost += sys.technologies[g].c_fix * sol.g_cap[d.nbg(node, b, g)];
    }
  }
  acc.objective_term = value - op_cost - acc.capital_cost;
  acc.residual = acc.objective_term -
                 (acc.consumer_surplus + acc.generator_profit +
                  acc.congestion_rent + acc.shortfall + acc.line_violation +
                  acc.rps_account - acc.capital_cost);
  return acc;
}

GenClass classify_generator(double build_expansion_mw,
                            double build_counterfactual_mw, double tol_mw) {
  const bool star = build_expansion_mw > tol_mw;
  const bool prime = build_counterfactual_mw > tol_mw;
  if (star && prime) return GenClass::kZeroBenefit;
  if (star) return GenClass::kBeneficiary;
  if (prime) return GenClass::kLoser;
  return GenClass::kIndeterminate;
}

BenefitReport compute_benefit_report(const PrimalDualSolution& sol,
                                     const PrimalDualSolution& cf,
                                     const ExpansionModel& em,
                                     const std::string& scope) {
  const Dims& d = sol.dims;
  BenefitReport rep;
  rep.scope = scope;
  rep.load_delta.resize(d.buses);
  rep.load_expansion.resize(d.buses);
  rep.gen_unit_delta.resize(d.buses, d.techs);
  rep.gen_unit_expansion.resize(d.buses, d.techs);
  rep.gen_class.resize(d.buses * d.techs);
  const int root = em.tree().root();
  for (int b = 0; b < d.buses; ++b) {
    const LoadBenefit lb = load_benefit(sol, cf, em, b);
    rep.load_delta[b] = lb.delta;
    rep.load_expansion[b] = lb.expansion_value;
    for (int g = 0; g < d.techs; ++g) {
      const GeneratorUnitBenefit gb = generator_unit_benefit(sol, cf, em, b, g);
      rep.gen_unit_delta(b, g) = gb.delta;
      rep.gen_unit_expansion(b, g) = gb.expansion_value;
      rep.gen_class[b * d.techs + g] =
          classify_generator(sol.build_mw[d.nbg(root, b, g)],
                             cf.build_mw[d.nbg(root, b, g)], 1e-3);
    }
  }
  rep.objective_delta = sol.objective - cf.objective;
  for (int n = 0; n < d.nodes; ++n) {
    rep.congestion_rent_delta +=
        em.node_weight(n) *
        (congestion_rent(sol, em, n) - congestion_rent(cf, em, n));
  }
  return rep;
}

}  // namespace gridalloc
