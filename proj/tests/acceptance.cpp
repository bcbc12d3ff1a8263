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

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is independent; a thrown exception fails only the
// criterion that raised it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gridalloc/allocation.hpp"
#include "gridalloc/benefits.hpp"
#include "gridalloc/counterfactual.hpp"
#include "gridalloc/evaluate.hpp"
#include "gridalloc/fixtures.hpp"
#include "gridalloc/optimizer.hpp"
#include "toys.hpp"

using namespace gridalloc;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

SolveOptions tight() {
  SolveOptions o;
  o.mip_gap = 1e-9;
  return o;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Shared solve of the 3-bus suite used by criteria 2, 3, 5 and 6.
struct SuiteCase {
  toys::TheoremToy toy;
  DispatchData dd;
  std::unique_ptr<ExpansionModel> em;
  std::unique_ptr<SolverBackend> backend;
  ExpansionPlan plan;
  PrimalDualSolution ref;
};

// Heap-allocated so the models' references to their cases stay valid.
std::vector<std::unique_ptr<SuiteCase>>& suite_cases() {
  static std::vector<std::unique_ptr<SuiteCase>> cases = [] {
    const double prm[3][4] = {
        {2000.0, 1000.0, 200.0, 0.6},
        {1800.0, 900.0, 250.0, 0.6},
        {2400.0, 1150.0, 150.0, 0.5},
    };
    std::vector<std::unique_ptr<SuiteCase>> out;
    for (const double* p : prm) {
      auto c = std::make_unique<SuiteCase>();
      c->toy = toys::theorem_toy(p[0], p[1], p[2], p[3]);
      c->dd = full_resolution_dispatch(c->toy.sys);
      c->em = std::make_unique<ExpansionModel>(c->toy.sys, c->toy.tree, c->dd);
      c->backend = make_highs_backend();
      c->plan = c->em->solve_mip(*c->backend, tight());
      c->ref = c->em->fix_and_solve_lp(*c->backend, c->plan.w, tight());
      out.push_back(std::move(c));
    }
    return out;
  }();
  return cases;
}

std::string render_sweep(const SweepResult& r) {
  std::ostringstream os;
  for (const ComboResult& c : r.ranked) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d %.9e", c.combo_index, c.gross_benefit);
    os << buf;
    for (double s : c.load_share) {
      std::snprintf(buf, sizeof(buf), " %.6f", s);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

int main() {
  criterion(1, "load-only and pooled allocation oracles (+-0.01)",
            [](std::string& detail) {
    bool ok = true;
    for (const char* name : {"portfolio", "l2"}) {
      const LoadBenefitFixture& f = load_fixture(name);
      const AllocationReport rep =
          allocate_load_only(f.load_deltas, f.project_cost, f.name);
      for (size_t b = 0; b < f.expected_ratio.size(); ++b) {
        if (!close(rep.load_ratio[b], f.expected_ratio[b], 0.01)) ok = false;
      }
    }
    const PooledBenefitFixture& pf = pooled_benefit_fixture();
    const int buses = static_cast<int>(pf.load_deltas.size());
    Eigen::MatrixXd gen(buses, 1), g0(buses, 1);
    for (int b = 0; b < buses; ++b) {
      gen(b, 0) = pf.gen_pooled_deltas[b];
      g0(b, 0) = 1.0;
    }
    const AllocationReport rep = allocate_load_and_gen(
        pf.load_deltas, gen, g0, load_fixture("portfolio").project_cost,
        "portfolio");
    double load_share = 0.0;
    for (int b = 0; b < buses; ++b) {
      load_share += rep.load_ratio[b];
      if (!close(rep.load_ratio[b], pf.expected_load_ratio[b], 0.01))
        ok = false;
      if (!close(rep.gen_ratio(b, 0), pf.expected_gen_ratio[b], 0.01))
        ok = false;
    }
    if (!close(load_share, pf.expected_load_share, 0.01)) ok = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "load share %.2f%%", load_share);
    detail = buf;
    return ok;
  });

  criterion(2, "classification suite benefit signs (<=1e-4 relative)",
            [](std::string& detail) {
    bool ok = true, saw_zero = false, saw_gain = false, saw_loss = false;
    int solved = 0;
    for (auto& cp : suite_cases()) {
      SuiteCase& c = *cp;
      if (c.plan.selected.empty()) continue;
      ++solved;
      const InvestmentSubset subset = portfolio_subset(c.plan, *c.em);
      CounterfactualConfig cfg;  // option 2
      const PrimalDualSolution cf = solve_counterfactual(
          *c.em, *c.backend, c.plan, c.ref, subset, cfg, tight());
      const BenefitReport rep =
          compute_benefit_report(c.ref, cf, *c.em, "portfolio");
      const int techs = static_cast<int>(c.toy.sys.technologies.size());
      for (int b = 0; b < 3; ++b) {
        for (int g = 0; g < techs; ++g) {
          const double delta = rep.gen_unit_delta(b, g);
          const double scale = discounted_unit_investment(*c.em, g);
          switch (rep.gen_class[b * techs + g]) {
            case GenClass::kZeroBenefit:
              if (std::abs(delta) > 1e-4 * scale) ok = false;
              saw_zero = true;
              break;
            case GenClass::kBeneficiary:
              if (delta < -1e-4 * scale) ok = false;
              if (delta > 1e-4 * scale) saw_gain = true;
              break;
            case GenClass::kLoser:
              if (delta > 1e-4 * scale) ok = false;
              if (delta < -1e-4 * scale) saw_loss = true;
              break;
            case GenClass::kIndeterminate:
              break;
          }
        }
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "%d solved, classes zero=%d gain=%d loss=%d", solved,
                  saw_zero, saw_gain, saw_loss);
    detail = buf;
    return ok && solved >= 2 && saw_zero && saw_gain && saw_loss;
  });

  criterion(3, "zero-profit condition on first-stage builds (<=1e-6)",
            [](std::string& detail) {
    double worst = 0.0;
    for (auto& cp : suite_cases()) {
      SuiteCase& c = *cp;
      const KktReport kkt = verify_kkt(c.ref, *c.em);
      worst = std::max(worst, kkt.max_zero_profit_violation);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max violation %.2e", worst);
    detail = buf;
    return worst <= 1e-6;
  });

  criterion(4, "MIP matches exhaustive 6-binary enumeration",
            [](std::string& detail) {
    const SystemCase sys = toys::two_bus_expandable(30.0, 50000.0, 400000.0);
    const ScenarioTree tree = toys::two_stage_tree(2, 1);
    const DispatchData dd = full_resolution_dispatch(sys);
    const ExpansionModel em(sys, tree, dd);
    auto backend = make_highs_backend();
    double best = -1e300;
    std::vector<double> best_w;
    for (int mask = 0; mask < (1 << 6); ++mask) {
      std::vector<double> w(6, 0.0);
      for (int i = 0; i < 6; ++i) w[i] = (mask >> i) & 1;
      const PrimalDualSolution sol =
          em.fix_and_solve_lp(*backend, w, tight());
      if (sol.objective > best + 1e-6) {
        best = sol.objective;
        best_w = w;
      }
    }
    const ExpansionPlan plan = em.solve_mip(*backend, tight());
    char buf[96];
    std::snprintf(buf, sizeof(buf), "mip %.6e vs enumeration %.6e",
                  plan.objective, best);
    detail = buf;
    return close(plan.objective, best, 1e-6 * (std::abs(best) + 1.0)) &&
           plan.w == best_w;
  });

  criterion(5, "surplus decomposition residual (<=1e-6 relative)",
            [](std::string& detail) {
    double worst = 0.0;
    for (auto& cp : suite_cases()) {
      SuiteCase& c = *cp;
      for (int n = 0; n < c.em->tree().size(); ++n) {
        const SurplusAccounts a = surplus_decomposition(c.ref, *c.em, n);
        worst = std::max(worst, std::abs(a.residual) /
                                    (std::abs(a.objective_term) + 1.0));
      }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max relative residual %.2e", worst);
    detail = buf;
    return worst <= 1e-6;
  });

  criterion(6, "counterfactual objectives ordered by flexibility",
            [](std::string& detail) {
    bool ok = true;
    int checked = 0;
    for (auto& cp : suite_cases()) {
      SuiteCase& c = *cp;
      if (c.plan.selected.empty()) continue;
      ++checked;
      const InvestmentSubset subset = portfolio_subset(c.plan, *c.em);
      double obj[4];
      for (int opt = 1; opt <= 3; ++opt) {
        CounterfactualConfig cfg;
        cfg.option = static_cast<CounterfactualOption>(opt);
        obj[opt] = solve_counterfactual(*c.em, *c.backend, c.plan, c.ref,
                                        subset, cfg, tight())
                       .objective;
      }
      const double tol = 1e-6 * (std::abs(c.ref.objective) + 1.0);
      if (!(obj[1] <= obj[2] + tol && obj[2] <= obj[3] + tol &&
            obj[3] <= c.ref.objective + tol))
        ok = false;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%d cases checked", checked);
    detail = buf;
    return ok && checked >= 2;
  });

  criterion(7, "benefit-cost uniformity and harmed-participant flag",
            [](std::string& detail) {
    const LoadBenefitFixture& pf = load_fixture("portfolio");
    const AllocationReport portfolio =
        allocate_load_only(pf.load_deltas, pf.project_cost, pf.name);
    double common = -1.0;
    for (size_t b = 0; b < pf.load_deltas.size(); ++b) {
      if (pf.load_deltas[b] <= 0.0) continue;
      if (common < 0.0) common = portfolio.load_bcr[b];
      if (!close(portfolio.load_bcr[b], common, 1e-9 * common)) return false;
    }
    std::vector<AllocationReport> projects;
    for (const char* name : {"l2", "l3", "l6", "l7", "l10", "l12"}) {
      const LoadBenefitFixture& f = load_fixture(name);
      projects.push_back(
          allocate_load_only(f.load_deltas, f.project_cost, f.name));
    }
    const ScopeComparison cmp =
        compare_scopes(projects, portfolio, pf.load_deltas);
    bool flagged = false;
    for (size_t b = 0; b < cmp.flagged.size(); ++b) {
      if (cmp.flagged[b] && pf.load_deltas[b] < 0.0 &&
          cmp.summed_cost[b] > 0.0)
        flagged = true;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "common BCR %.4f", common);
    detail = buf;
    return common > 0.0 && flagged;
  });

  criterion(8, "27-combo sweep: <5 min, normalized, byte-identical reruns",
            [](std::string& detail) {
    const SystemCase sys = toys::two_bus_expandable(30.0, 1.0, 1.0);
    UncertaintyGrid grid;
    const char* names[3] = {"load", "fuel", "invest"};
    const double scales[3][3] = {
        {0.8, 1.0, 1.2}, {0.8, 1.0, 1.25}, {0.9, 1.0, 1.1}};
    const char* levels[3] = {"low", "medium", "high"};
    for (int d = 0; d < 3; ++d) {
      GridDimension dim;
      dim.name = names[d];
      for (int l = 0; l < 3; ++l) {
        GridLevel lvl;
        lvl.name = levels[l];
        if (d == 0) lvl.data.demand_scale = scales[d][l];
        if (d == 1) lvl.data.fuel_scale["gen"] = scales[d][l];
        if (d == 2) lvl.data.invest_scale["gen"] = scales[d][l];
        dim.levels.push_back(lvl);
      }
      grid.dimensions.push_back(dim);
    }
    OosSetup setup;
    setup.base = &sys;
    setup.grid = grid;
    setup.expansion_caps = {50.0};
    setup.counterfactual_caps = {30.0};

    const auto start = std::chrono::steady_clock::now();
    const SweepResult a = sweep(setup, SolveOptions{}, 2);
    const SweepResult b = sweep(setup, SolveOptions{}, 2);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (a.failed != 0 || a.ranked.size() != 27) return false;
    for (const ComboResult& c : a.ranked) {
      double total = 0.0;
      for (double s : c.load_share) total += s;
      if (!c.load_share.empty() && !close(total, 100.0, 1e-9)) return false;
    }
    const bool identical = render_sweep(a) == render_sweep(b);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f s for two sweeps", secs);
    detail = buf;
    return identical && secs < 300.0;
  });

  return g_failures == 0 ? 0 : 1;
}
