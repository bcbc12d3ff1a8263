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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridalloc/allocation.hpp"
#include "gridalloc/benefits.hpp"
#include "gridalloc/counterfactual.hpp"
#include "gridalloc/evaluate.hpp"
#include "gridalloc/fixtures.hpp"
#include "gridalloc/io.hpp"
#include "gridalloc/optimizer.hpp"
#include "gridalloc/scenario.hpp"
#include "gridalloc/system.hpp"
#include "gridalloc/timeseries.hpp"
#include "json.hpp"

namespace ga = gridalloc;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Formatting helpers. All numeric output uses fixed printf formats so reruns
// are byte-identical.

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}
std::string pct(double v) { return fmt("%.2f", v); }
std::string money(double v) { return fmt("%.2f", v); }
std::string bcr(double v) {
  if (std::isnan(v)) return "no-cost";
  return fmt("%.4f", v);
}

std::string pad(const std::string& s, size_t width) {
  if (s.size() >= width) return s;
  return std::string(width - s.size(), ' ') + s;
}

/// One fixed-width table: first column left-ish labels, the rest padded to
/// the widest cell per column.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  size_t cols = 0;
  for (const auto& r : rows) cols = std::max(cols, r.size());
  std::vector<size_t> width(cols, 0);
  for (const auto& r : rows) {
    for (size_t c = 0; c < r.size(); ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  std::string out;
  for (const auto& r : rows) {
    for (size_t c = 0; c < r.size(); ++c) {
      if (c > 0) out += "  ";
      out += pad(r[c], width[c]);
    }
    out += "\n";
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    ga::write_file(out_path, text);
  }
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty() || !std::filesystem::exists(path)) {
    throw std::invalid_argument(what + " not found: " + path);
  }
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

// ---------------------------------------------------------------------------
// Shared pipeline: case + tree + dispatch + model + solver.

struct CommonOpts {
  std::string case_path;
  std::string tree_path;
  std::string plan_path;
  std::string out;
  int k = 20;  // representative days; 0 = full chronology
  double gap = 0.005;
  double time_limit = ga::kInf;
  std::uint64_t seed = 0;
  int threads = 1;
};

void add_common_flags(CLI::App* cmd, CommonOpts* o, bool with_tree = true) {
  cmd->add_option("--case", o->case_path, "case file (JSON)")->required();
  if (with_tree) {
    cmd->add_option("--tree", o->tree_path, "scenario tree file (JSON)")
        ->required();
  }
  cmd->add_option("--out", o->out, "output file or directory");
  cmd->add_option("--k", o->k,
                  "representative days for dispatch (0 = full chronology)");
  cmd->add_option("--gap", o->gap, "relative MIP gap");
  cmd->add_option("--time-limit", o->time_limit, "solver time limit, seconds");
  cmd->add_option("--seed", o->seed, "clustering / solver seed");
  cmd->add_option("--threads", o->threads, "worker threads for sweeps");
}

/// System-wide net load: total demand minus renewable availability times
/// existing renewable capacity, the clustering feature series.
ga::HourlySeries system_net_load(const ga::SystemCase& sys) {
  const int hours = sys.hours();
  ga::HourlySeries demand(hours, 0.0);
  for (int h = 0; h < hours; ++h) {
    for (int b = 0; b < static_cast<int>(sys.buses.size()); ++b) {
      demand[h] += sys.demand(b, h);
    }
  }
  std::vector<ga::HourlySeries> profiles;
  std::vector<double> caps;
  for (int g = 0; g < static_cast<int>(sys.technologies.size()); ++g) {
    if (!sys.technologies[g].is_renewable) continue;
    double total = 0.0;
    for (int b = 0; b < sys.fleet.existing.rows(); ++b) {
      total += sys.fleet.existing(b, g);
    }
    if (total <= 0.0) continue;
    ga::HourlySeries prof(hours, 0.0);
    for (int h = 0; h < hours; ++h) {
      double mw = 0.0;
      for (int b = 0; b < sys.fleet.existing.rows(); ++b) {
        mw += sys.fleet.availability[g](b, h) * sys.fleet.existing(b, g);
      }
      prof[h] = mw / total;
    }
    profiles.push_back(std::move(prof));
    caps.push_back(total);
  }
  return ga::net_load(demand, profiles, caps);
}

struct Pipeline {
  ga::SystemCase sys;
  ga::ScenarioTree tree;
  ga::DispatchData dispatch;
  std::unique_ptr<ga::ExpansionModel> em;
  std::unique_ptr<ga::SolverBackend> backend;
  ga::SolveOptions options;
};

std::unique_ptr<Pipeline> make_pipeline(const CommonOpts& o) {
  require_file(o.case_path, "case");
  require_file(o.tree_path, "tree");
  auto p = std::make_unique<Pipeline>();
  p->sys = ga::load_case(o.case_path);
  const std::vector<std::string> findings = ga::validate_case(p->sys);
  if (!findings.empty()) {
    std::string msg = "case validation failed:";
    for (const std::string& f : findings) msg += "\n  " + f;
    throw std::invalid_argument(msg);
  }
  p->tree = ga::load_tree(o.tree_path, p->sys);
  const ga::TreeValidationReport tv = ga::validate_tree(p->tree);
  if (!tv.ok()) {
    std::string msg = "tree validation failed:";
    for (const std::string& e : tv.errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  if (o.k < 0) throw std::invalid_argument("--k must be >= 0");
  if (o.gap <= 0.0 || o.gap >= 1.0) {
    throw std::invalid_argument("--gap must lie in (0, 1)");
  }
  if (o.k == 0) {
    p->dispatch = ga::full_resolution_dispatch(p->sys);
  } else {
    const ga::TimeBlocks blocks =
        ga::cluster_days(system_net_load(p->sys), o.k, o.seed);
    p->dispatch = ga::resolve_dispatch(p->sys, blocks);
  }
  p->em = std::make_unique<ga::ExpansionModel>(p->sys, p->tree, p->dispatch);
  p->backend = ga::make_highs_backend();
  p->options.mip_gap = o.gap;
  p->options.time_limit_s = o.time_limit;
  p->options.random_seed = static_cast<int>(o.seed);
  return p;
}

ga::ExpansionPlan load_plan_file(const CommonOpts& o, const Pipeline& p) {
  require_file(o.plan_path, "plan");
  return ga::load_plan(o.plan_path, *p.em);
}

ga::InvestmentSubset subset_from_scope(const std::string& scope,
                                       const ga::ExpansionPlan& plan,
                                       const ga::ExpansionModel& em) {
  if (scope == "portfolio") return ga::portfolio_subset(plan, em);
  const std::string prefix = "project:";
  if (scope.rfind(prefix, 0) == 0) {
    const std::string line_id = scope.substr(prefix.size());
    const int line = em.system().line_index(line_id);
    if (line < 0) {
      throw std::invalid_argument("scope names unknown line '" + line_id +
                                  "'");
    }
    return ga::project_subset(plan, em, line);
  }
  throw std::invalid_argument(
      "scope must be 'portfolio' or 'project:<line-id>'");
}

ga::CounterfactualConfig cf_config(int option, bool zero_all_years) {
  if (option < 1 || option > 3) {
    throw std::invalid_argument("--option must be 1, 2 or 3");
  }
  ga::CounterfactualConfig cfg;
  cfg.option = static_cast<ga::CounterfactualOption>(option);
  cfg.zero_all_years = zero_all_years;
  return cfg;
}

std::vector<std::string> bus_ids(const ga::SystemCase& sys) {
  std::vector<std::string> ids;
  for (const ga::Bus& b : sys.buses) ids.push_back(b.id);
  return ids;
}

std::string plan_summary(const ga::ExpansionPlan& plan,
                         const ga::ExpansionModel& em) {
  const ga::SystemCase& sys = em.system();
  std::ostringstream os;
  os << "objective " << fmt("%.6f", plan.objective) << "\n";
  os << "best_bound " << fmt("%.6f", plan.best_bound) << "\n";
  os << "selections " << plan.selected.size() << "\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"node", "line", "increment", "delta_mw", "cost_per_yr"});
  for (const ga::LineSelection& s : plan.selected) {
    rows.push_back({em.tree().node(s.node).id, sys.lines[s.line].id,
                    sys.catalog.increments[s.increment].label,
                    money(sys.catalog.increments[s.increment].delta_mw),
                    money(sys.catalog.line_cost.at(s.line)[s.increment])});
  }
  os << render_table(rows);
  return os.str();
}

std::string allocation_table(const ga::AllocationReport& rep,
                             const std::vector<std::string>& buses,
                             const std::vector<std::string>& techs) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"scope=" + rep.scope,
                                     "policy=" + rep.policy};
  rows.push_back({"participant", "ratio_pct", "cost", "bcr"});
  for (size_t b = 0; b < buses.size(); ++b) {
    rows.push_back({"load:" + buses[b], pct(rep.load_ratio[b]),
                    money(rep.load_cost[b]), bcr(rep.load_bcr[b])});
  }
  if (rep.policy == "load+gen") {
    for (size_t b = 0; b < buses.size(); ++b) {
      for (size_t g = 0; g < techs.size(); ++g) {
        rows.push_back({"gen:" + buses[b] + ":" + techs[g],
                        pct(rep.gen_ratio(b, g)), money(rep.gen_cost(b, g)),
                        bcr(rep.gen_bcr(b, g))});
      }
    }
  }
  std::ostringstream os;
  os << header[0] << "  " << header[1] << "  total_cost="
     << money(rep.total_cost)
     << (rep.compensate_losers ? "  compensate-losers" : "") << "\n";
  os << render_table(rows);
  return os.str();
}

// ---------------------------------------------------------------------------
// Benefit-vector files: the bridge between `fixtures`, `benefits`, and
// `allocate --deltas`.

struct DeltaFile {
  std::string scope;
  double cost = 0.0;
  std::vector<std::string> participants;
  std::vector<double> load_deltas;
  std::vector<double> gen_pooled_deltas;  // optional, already G0-weighted
};

DeltaFile read_delta_file(const std::string& path) {
  require_file(path, "deltas file");
  json j;
  try {
    j = json::parse(ga::read_file(path));
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  DeltaFile d;
  try {
    d.scope = j.at("scope").get<std::string>();
    d.cost = j.at("cost").get<double>();
    d.participants = j.at("participants").get<std::vector<std::string>>();
    d.load_deltas = j.at("load_deltas").get<std::vector<double>>();
    if (j.contains("gen_pooled_deltas")) {
      d.gen_pooled_deltas =
          j.at("gen_pooled_deltas").get<std::vector<double>>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  if (d.load_deltas.size() != d.participants.size() ||
      (!d.gen_pooled_deltas.empty() &&
       d.gen_pooled_deltas.size() != d.participants.size())) {
    throw std::invalid_argument(path + ": participant/delta length mismatch");
  }
  return d;
}

json delta_file_json(const DeltaFile& d) {
  json j;
  j["scope"] = d.scope;
  j["cost"] = d.cost;
  j["participants"] = d.participants;
  j["load_deltas"] = d.load_deltas;
  if (!d.gen_pooled_deltas.empty()) {
    j["gen_pooled_deltas"] = d.gen_pooled_deltas;
  }
  return j;
}

std::vector<std::string> default_participants(size_t n) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < n; ++i) ids.push_back("b" + std::to_string(i + 1));
  return ids;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

int cmd_validate(const CommonOpts& o) {
  require_file(o.case_path, "case");
  const ga::SystemCase sys = ga::load_case(o.case_path);
  const std::vector<std::string> findings = ga::validate_case(sys);
  std::ostringstream os;
  for (const std::string& f : findings) os << "error: " << f << "\n";
  if (!o.tree_path.empty()) {
    require_file(o.tree_path, "tree");
    const ga::ScenarioTree tree = ga::load_tree(o.tree_path, sys);
    const ga::TreeValidationReport tv = ga::validate_tree(tree);
    for (const std::string& e : tv.errors) os << "error: " << e << "\n";
    for (const std::string& w : tv.warnings) os << "warning: " << w << "\n";
    if (!tv.ok()) {
      std::cout << os.str();
      return 2;
    }
  }
  if (!findings.empty()) {
    std::cout << os.str();
    return 2;
  }
  os << "ok: case '" << sys.name << "' (" << sys.buses.size() << " buses, "
     << sys.lines.size() << " lines, " << sys.technologies.size()
     << " technologies, " << sys.hours() << " hours)";
  if (!o.tree_path.empty()) os << ", tree valid";
  os << "\n";
  std::cout << os.str();
  return 0;
}

int cmd_cluster(const CommonOpts& o) {
  require_file(o.case_path, "case");
  const ga::SystemCase sys = ga::load_case(o.case_path);
  if (o.k < 1) throw std::invalid_argument("--k must be >= 1 for clustering");
  const ga::TimeBlocks blocks =
      ga::cluster_days(system_net_load(sys), o.k, o.seed);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"medoid_day", "days_represented", "weight_hours"});
  for (const ga::TimeBlock& b : blocks.blocks) {
    rows.push_back({std::to_string(b.medoid_day),
                    std::to_string(b.days_represented),
                    money(b.weight_hours())});
  }
  emit(render_table(rows), o.out);
  return 0;
}

int cmd_plan(const CommonOpts& o) {
  auto p = make_pipeline(o);
  const ga::ExpansionPlan plan = p->em->solve_mip(*p->backend, p->options);
  if (!o.out.empty()) {
    const auto dir = ensure_out_dir(o.out);
    ga::save_plan((dir / "plan.json").string(), plan, *p->em);
    ga::write_file((dir / "plan_summary.txt").string(),
                   plan_summary(plan, *p->em));
  }
  std::cout << plan_summary(plan, *p->em);
  return 0;
}

int cmd_prices(const CommonOpts& o) {
  auto p = make_pipeline(o);
  const ga::ExpansionPlan plan = load_plan_file(o, *p);
  const ga::PrimalDualSolution sol =
      p->em->fix_and_solve_lp(*p->backend, plan.w, p->options);
  const ga::Dims& d = sol.dims;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"node", "period", "weight_h"};
  for (const std::string& id : bus_ids(p->sys)) header.push_back("pi_" + id);
  rows.push_back(header);
  for (int n = 0; n < d.nodes; ++n) {
    for (int t = 0; t < d.periods; ++t) {
      std::vector<std::string> row = {p->tree.node(n).id, std::to_string(t),
                                      money(p->em->period_weight(t))};
      for (int b = 0; b < d.buses; ++b) {
        row.push_back(fmt("%.4f", sol.pi[d.nbt(n, b, t)]));
      }
      rows.push_back(std::move(row));
    }
  }
  std::ostringstream os;
  os << render_table(rows);
  os << "\nnode  nu\n";
  for (int n = 0; n < d.nodes; ++n) {
    os << p->tree.node(n).id << "  " << fmt("%.4f", sol.nu[n]) << "\n";
  }
  emit(os.str(), o.out);
  return 0;
}

int cmd_counterfactual(const CommonOpts& o, const std::string& scope,
                       int option, bool zero_all_years) {
  auto p = make_pipeline(o);
  const ga::ExpansionPlan plan = load_plan_file(o, *p);
  const ga::PrimalDualSolution ref =
      p->em->fix_and_solve_lp(*p->backend, plan.w, p->options);
  const ga::InvestmentSubset subset = subset_from_scope(scope, plan, *p->em);
  const ga::PrimalDualSolution cf = ga::solve_counterfactual(
      *p->em, *p->backend, plan, ref, subset, cf_config(option, zero_all_years),
      p->options);
  std::ostringstream os;
  os << "scope " << subset.scope << "\n";
  os << "option " << option << "\n";
  os << "members " << subset.members.size() << "\n";
  os << "subset_cost " << fmt("%.6f", ga::subset_cost(subset, *p->em)) << "\n";
  os << "reference_objective " << fmt("%.6f", ref.objective) << "\n";
  os << "counterfactual_objective " << fmt("%.6f", cf.objective) << "\n";
  os << "gross_benefit " << fmt("%.6f", ref.objective - cf.objective) << "\n";
  emit(os.str(), o.out);
  return 0;
}

std::string benefits_table(const ga::BenefitReport& rep,
                           const ga::SystemCase& sys) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"quantity"};
  for (const ga::Bus& b : sys.buses) header.push_back(b.id);
  rows.push_back(header);
  auto row_of = [&](const std::string& label,
                    const std::vector<double>& v, const char* f) {
    std::vector<std::string> row = {label};
    for (double x : v) row.push_back(fmt(f, x));
    rows.push_back(std::move(row));
  };
  row_of("load_delta", rep.load_delta, "%.2f");
  row_of("load_expansion", rep.load_expansion, "%.2f");
  const int techs = static_cast<int>(rep.gen_unit_delta.cols());
  for (int g = 0; g < techs; ++g) {
    std::vector<std::string> row = {"gen_unit_delta:" +
                                    sys.technologies[g].id};
    std::vector<std::string> cls = {"gen_class:" + sys.technologies[g].id};
    for (int b = 0; b < rep.gen_unit_delta.rows(); ++b) {
      row.push_back(fmt("%.2f", rep.gen_unit_delta(b, g)));
      cls.push_back(ga::to_string(
          rep.gen_class[b * techs + g]));
    }
    rows.push_back(std::move(row));
    rows.push_back(std::move(cls));
  }
  std::ostringstream os;
  os << "scope " << rep.scope << "\n";
  os << "objective_delta " << fmt("%.6f", rep.objective_delta) << "\n";
  os << "congestion_rent_delta " << fmt("%.6f", rep.congestion_rent_delta)
     << "\n";
  os << render_table(rows);
  return os.str();
}

int cmd_benefits(const CommonOpts& o, const std::string& scope, int option,
                 bool zero_all_years) {
  auto p = make_pipeline(o);
  const ga::ExpansionPlan plan = load_plan_file(o, *p);
  const ga::PrimalDualSolution ref =
      p->em->fix_and_solve_lp(*p->backend, plan.w, p->options);
  const ga::InvestmentSubset subset = subset_from_scope(scope, plan, *p->em);
  const ga::PrimalDualSolution cf = ga::solve_counterfactual(
      *p->em, *p->backend, plan, ref, subset, cf_config(option, zero_all_years),
      p->options);
  const ga::BenefitReport rep =
      ga::compute_benefit_report(ref, cf, *p->em, subset.scope);
  emit(benefits_table(rep, p->sys), o.out);
  return 0;
}

int cmd_allocate_deltas(const std::string& deltas_path,
                        const std::string& policy, bool compensate,
                        double cost_override, const std::string& out) {
  const DeltaFile d = read_delta_file(deltas_path);
  const double cost = cost_override > 0.0 ? cost_override : d.cost;
  ga::AllocationReport rep;
  if (policy == "load-only") {
    rep = ga::allocate_load_only(d.load_deltas, cost, d.scope, compensate);
  } else if (policy == "load+gen") {
    if (d.gen_pooled_deltas.empty()) {
      throw std::invalid_argument(
          "deltas file has no gen_pooled_deltas for the load+gen policy");
    }
    // Pooled per-bus generation values enter as one pseudo-technology with
    // unit weighting (the values are already G0-weighted dollars).
    const int buses = static_cast<int>(d.load_deltas.size());
    Eigen::MatrixXd gen(buses, 1), g0(buses, 1);
    for (int b = 0; b < buses; ++b) {
      gen(b, 0) = d.gen_pooled_deltas[b];
      g0(b, 0) = 1.0;
    }
    rep = ga::allocate_load_and_gen(d.load_deltas, gen, g0, cost, d.scope,
                                    compensate);
  } else {
    throw std::invalid_argument("--policy must be load-only or load+gen");
  }
  emit(allocation_table(rep, d.participants, {"pooled"}), out);
  return 0;
}

int cmd_allocate_model(const CommonOpts& o, const std::string& scope,
                       const std::string& policy, bool compensate, int option,
                       bool zero_all_years) {
  auto p = make_pipeline(o);
  const ga::ExpansionPlan plan = load_plan_file(o, *p);
  const ga::PrimalDualSolution ref =
      p->em->fix_and_solve_lp(*p->backend, plan.w, p->options);
  const ga::InvestmentSubset subset = subset_from_scope(scope, plan, *p->em);
  const ga::PrimalDualSolution cf = ga::solve_counterfactual(
      *p->em, *p->backend, plan, ref, subset, cf_config(option, zero_all_years),
      p->options);
  const ga::BenefitReport rep =
      ga::compute_benefit_report(ref, cf, *p->em, subset.scope);
  const double cost = ga::subset_cost(subset, *p->em);
  ga::AllocationReport alloc;
  if (policy == "load-only") {
    alloc =
        ga::allocate_load_only(rep.load_delta, cost, subset.scope, compensate);
  } else if (policy == "load+gen") {
    alloc = ga::allocate_load_and_gen(rep.load_delta, rep.gen_unit_delta,
                                      p->sys.fleet.existing, cost,
                                      subset.scope, compensate);
  } else {
    throw std::invalid_argument("--policy must be load-only or load+gen");
  }
  std::vector<std::string> techs;
  for (const ga::Technology& t : p->sys.technologies) techs.push_back(t.id);
  emit(allocation_table(alloc, bus_ids(p->sys), techs), o.out);
  return 0;
}

int cmd_fixtures(const std::string& out) {
  std::vector<DeltaFile> files;
  for (const ga::LoadBenefitFixture& f : ga::load_benefit_fixtures()) {
    DeltaFile d;
    d.scope = f.name;
    d.cost = f.project_cost;
    d.participants = default_participants(f.load_deltas.size());
    d.load_deltas = f.load_deltas;
    files.push_back(std::move(d));
  }
  {
    const ga::PooledBenefitFixture& pf = ga::pooled_benefit_fixture();
    DeltaFile d;
    d.scope = "pooled";
    d.cost = ga::load_fixture("portfolio").project_cost;
    d.participants = default_participants(pf.load_deltas.size());
    d.load_deltas = pf.load_deltas;
    d.gen_pooled_deltas = pf.gen_pooled_deltas;
    files.push_back(std::move(d));
  }
  if (out.empty()) {
    for (const DeltaFile& d : files) {
      std::cout << delta_file_json(d).dump() << "\n";
    }
    return 0;
  }
  const auto dir = ensure_out_dir(out);
  for (const DeltaFile& d : files) {
    ga::write_file((dir / (d.scope + ".json")).string(),
                   delta_file_json(d).dump(2) + "\n");
  }
  std::cout << "wrote " << files.size() << " fixture files to " << out << "\n";
  return 0;
}

std::string sweep_results_table(const ga::SweepResult& res,
                                const ga::SystemCase& sys,
                                const ga::UncertaintyGrid& grid) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"rank", "combo", "status",
                                     "gross_benefit"};
  for (const ga::Bus& b : sys.buses) header.push_back("share_" + b.id);
  header.push_back("label");
  rows.push_back(header);
  for (size_t i = 0; i < res.ranked.size(); ++i) {
    const ga::ComboResult& r = res.ranked[i];
    std::vector<std::string> row = {std::to_string(i),
                                    std::to_string(r.combo_index),
                                    r.ok ? "ok" : "failed",
                                    r.ok ? money(r.gross_benefit) : "-"};
    for (size_t b = 0; b < sys.buses.size(); ++b) {
      row.push_back(r.load_share.empty() ? "-" : pct(r.load_share[b]));
    }
    row.push_back(r.ok ? ga::resolve_combo(sys, grid, r.levels).label
                       : ("error: " + r.error));
    rows.push_back(std::move(row));
  }
  return render_table(rows);
}

std::string divergence_table(const ga::DivergenceReport& rep) {
  std::ostringstream os;
  os << "combos_used " << rep.combos_used << "\n";
  os << "combos_failed " << rep.combos_failed << "\n";
  os << "combos_without_beneficiaries " << rep.combos_without_beneficiaries
     << "\n";
  if (rep.no_realized_beneficiaries) {
    os << "no realized beneficiaries\n";
    return os.str();
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"participant", "ex_ante_pct", "realized_min", "realized_max",
                  "ex_ante_outside"});
  for (const ga::ParticipantDivergence& p : rep.participants) {
    rows.push_back({p.id, pct(p.ex_ante), pct(p.realized_min),
                    pct(p.realized_max),
                    p.ex_ante_outside_range ? "yes" : "no"});
  }
  os << render_table(rows);
  return os.str();
}

int cmd_sweep(const CommonOpts& o, const std::string& scope,
              const std::string& grid_path, int option, bool zero_all_years,
              bool frozen_fleet, const std::vector<std::string>& later) {
  auto p = make_pipeline(o);
  const ga::ExpansionPlan plan = load_plan_file(o, *p);
  require_file(grid_path, "grid");
  const ga::UncertaintyGrid grid = ga::load_grid(grid_path);
  const ga::InvestmentSubset subset = subset_from_scope(scope, plan, *p->em);

  // Ex ante shares from the in-sample pipeline.
  const ga::PrimalDualSolution ref =
      p->em->fix_and_solve_lp(*p->backend, plan.w, p->options);
  const ga::PrimalDualSolution cf = ga::solve_counterfactual(
      *p->em, *p->backend, plan, ref, subset, cf_config(option, zero_all_years),
      p->options);
  const ga::BenefitReport ben =
      ga::compute_benefit_report(ref, cf, *p->em, subset.scope);
  const ga::AllocationReport ex_ante = ga::allocate_load_only(
      ben.load_delta, ga::subset_cost(subset, *p->em), subset.scope);

  ga::OosSetup setup;
  setup.base = &p->sys;
  setup.grid = grid;
  setup.expansion_caps = ga::first_stage_capacities(plan, *p->em);
  setup.counterfactual_caps =
      ga::first_stage_capacities(plan, *p->em, subset.members);
  setup.frozen_fleet = frozen_fleet;

  ga::SweepResult res;
  if (later.empty()) {
    res = ga::sweep(setup, p->options, o.threads);
  } else {
    std::vector<std::pair<int, int>> added;
    for (const std::string& spec : later) {
      const size_t colon = spec.find(':');
      if (colon == std::string::npos) {
        throw std::invalid_argument(
            "--add expects <line-id>:<increment-label>");
      }
      const int line = p->sys.line_index(spec.substr(0, colon));
      const std::string label = spec.substr(colon + 1);
      int inc = -1;
      for (size_t q = 0; q < p->sys.catalog.increments.size(); ++q) {
        if (p->sys.catalog.increments[q].label == label) {
          inc = static_cast<int>(q);
        }
      }
      added.emplace_back(line, inc);
    }
    res = ga::later_stage_scenario(setup, added, p->options, o.threads);
  }
  const ga::DivergenceReport div =
      ga::ex_ante_vs_ex_post(res, ex_ante.load_ratio, bus_ids(p->sys));

  const std::string results = sweep_results_table(res, p->sys, grid);
  const std::string divergence = divergence_table(div);
  if (!o.out.empty()) {
    const auto dir = ensure_out_dir(o.out);
    ga::write_file((dir / "sweep_results.txt").string(), results);
    ga::write_file((dir / "divergence.txt").string(), divergence);
    const double bin_width = 100.0 / div.bins;
    for (const ga::ParticipantDivergence& part : div.participants) {
      std::vector<std::vector<std::string>> rows;
      rows.push_back({"bin_lo_pct", "bin_hi_pct", "count"});
      for (int k = 0; k < div.bins; ++k) {
        rows.push_back({pct(k * bin_width), pct((k + 1) * bin_width),
                        std::to_string(part.histogram[k])});
      }
      ga::write_file((dir / ("hist_" + part.id + ".txt")).string(),
                     render_table(rows));
    }
  } else {
    std::cout << results << "\n" << divergence;
  }
  if (res.failed > 0) {
    std::cerr << "error: " << res.failed << " of " << res.ranked.size()
              << " combinations failed\n";
    return 4;
  }
  std::cout << "sweep ok: " << res.ranked.size() << " combinations\n";
  return 0;
}

int cmd_report(const CommonOpts& o, const std::string& policy, int option,
               bool zero_all_years, bool compensate) {
  auto p = make_pipeline(o);
  ga::ExpansionPlan plan;
  if (!o.plan_path.empty()) {
    plan = load_plan_file(o, *p);
  } else {
    plan = p->em->solve_mip(*p->backend, p->options);
  }
  const ga::PrimalDualSolution ref =
      p->em->fix_and_solve_lp(*p->backend, plan.w, p->options);

  std::ostringstream os;
  os << "== plan ==\n" << plan_summary(plan, *p->em) << "\n";

  const ga::KktReport kkt = ga::verify_kkt(ref, *p->em);
  os << "== optimality ==\n";
  os << "stationarity_violation " << fmt("%.3e", kkt.max_stationarity_violation)
     << "\n";
  os << "complementarity_violation "
     << fmt("%.3e", kkt.max_complementarity_violation) << "\n";
  os << "zero_profit_violation " << fmt("%.3e", kkt.max_zero_profit_violation)
     << "\n";
  for (const std::string& n : kkt.notes) os << "note: " << n << "\n";
  os << "\n";

  os << "== surplus accounts (per node) ==\n";
  std::vector<std::vector<std::string>> acct_rows;
  acct_rows.push_back({"node", "consumer", "gen_profit", "cong_rent",
                       "shortfall", "line_viol", "rps", "capital",
                       "objective", "residual"});
  for (int n = 0; n < p->tree.size(); ++n) {
    const ga::SurplusAccounts a = ga::surplus_decomposition(ref, *p->em, n);
    acct_rows.push_back(
        {p->tree.node(n).id, money(a.consumer_surplus),
         money(a.generator_profit), money(a.congestion_rent),
         money(a.shortfall), money(a.line_violation), money(a.rps_account),
         money(a.capital_cost), money(a.objective_term),
         fmt("%.3e", a.residual)});
  }
  os << render_table(acct_rows) << "\n";

  // Project scopes: every line with a first-stage selection, plus the
  // portfolio.
  const int root = p->tree.root();
  std::vector<int> project_lines;
  for (const ga::LineSelection& s : plan.selected) {
    if (s.node != root) continue;
    if (std::find(project_lines.begin(), project_lines.end(), s.line) ==
        project_lines.end()) {
      project_lines.push_back(s.line);
    }
  }
  std::sort(project_lines.begin(), project_lines.end());

  std::vector<ga::InvestmentSubset> subsets;
  for (int line : project_lines) {
    subsets.push_back(ga::project_subset(plan, *p->em, line));
  }
  subsets.push_back(ga::portfolio_subset(plan, *p->em));

  const std::vector<std::string> buses = bus_ids(p->sys);
  std::vector<std::string> techs;
  for (const ga::Technology& t : p->sys.technologies) techs.push_back(t.id);

  std::vector<std::vector<std::string>> delta_rows, ratio_rows;
  std::vector<std::string> head = {"scope"};
  for (const std::string& b : buses) head.push_back(b);
  delta_rows.push_back(head);
  head.push_back("cost");
  ratio_rows.push_back(head);

  std::vector<ga::AllocationReport> project_reports;
  ga::AllocationReport portfolio_report;
  std::vector<double> portfolio_deltas;
  for (const ga::InvestmentSubset& subset : subsets) {
    const ga::PrimalDualSolution cf = ga::solve_counterfactual(
        *p->em, *p->backend, plan, ref, subset,
        cf_config(option, zero_all_years), p->options);
    const ga::BenefitReport ben =
        ga::compute_benefit_report(ref, cf, *p->em, subset.scope);
    const double cost = ga::subset_cost(subset, *p->em);
    ga::AllocationReport alloc;
    if (policy == "load-only") {
      alloc = ga::allocate_load_only(ben.load_delta, cost, subset.scope,
                                     compensate);
    } else if (policy == "load+gen") {
      alloc = ga::allocate_load_and_gen(ben.load_delta, ben.gen_unit_delta,
                                        p->sys.fleet.existing, cost,
                                        subset.scope, compensate);
    } else {
      throw std::invalid_argument("--policy must be load-only or load+gen");
    }
    std::vector<std::string> drow = {subset.scope};
    std::vector<std::string> rrow = {subset.scope};
    for (size_t b = 0; b < buses.size(); ++b) {
      drow.push_back(money(ben.load_delta[b]));
      rrow.push_back(pct(alloc.load_ratio[b]));
    }
    rrow.push_back(money(cost));
    delta_rows.push_back(std::move(drow));
    ratio_rows.push_back(std::move(rrow));
    if (subset.scope == "portfolio") {
      portfolio_report = alloc;
      portfolio_deltas = ben.load_delta;
    } else {
      project_reports.push_back(alloc);
    }
  }

  os << "== load benefit deltas ==\n" << render_table(delta_rows) << "\n";
  os << "== load allocation ratios (pct, policy=" << policy << ") ==\n"
     << render_table(ratio_rows) << "\n";

  if (!project_reports.empty()) {
    const ga::ScopeComparison cmp =
        ga::compare_scopes(project_reports, portfolio_report, portfolio_deltas);
    os << "== project-sum vs portfolio ==\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"bus", "summed_ratio", "summed_cost", "portfolio_ratio",
                    "portfolio_cost", "portfolio_delta", "flagged"});
    for (size_t b = 0; b < buses.size(); ++b) {
      rows.push_back({buses[b], pct(cmp.summed_ratio[b]),
                      money(cmp.summed_cost[b]), pct(cmp.portfolio_ratio[b]),
                      money(cmp.portfolio_cost[b]),
                      money(cmp.portfolio_delta[b]),
                      cmp.flagged[b] ? "yes" : "no"});
    }
    os << render_table(rows);
  }

  emit(os.str(), o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gridalloc: two-stage transmission & generation expansion planning "
      "with beneficiaries-pay cost allocation"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string scope = "portfolio";
  std::string policy = "load-only";
  std::string grid_path, deltas_path, fixtures_out;
  int option = 2;
  bool zero_all_years = false, compensate = false, frozen_fleet = false;
  double cost_override = 0.0;
  std::vector<std::string> later;

  CLI::App* validate = app.add_subcommand(
      "validate", "check a case (and optionally a tree) for structural errors");
  validate->add_option("--case", o.case_path, "case file (JSON)")->required();
  validate->add_option("--tree", o.tree_path, "scenario tree file (JSON)");

  CLI::App* cluster =
      app.add_subcommand("cluster", "representative-day clustering report");
  cluster->add_option("--case", o.case_path, "case file (JSON)")->required();
  cluster->add_option("--k", o.k, "number of representative days");
  cluster->add_option("--seed", o.seed, "clustering seed");
  cluster->add_option("--out", o.out, "output file");

  CLI::App* plan = app.add_subcommand("plan", "solve the expansion MIP");
  add_common_flags(plan, &o);

  CLI::App* prices =
      app.add_subcommand("prices", "nodal prices of the fixed-plan LP");
  add_common_flags(prices, &o);
  prices->add_option("--plan", o.plan_path, "plan file")->required();

  CLI::App* counterfactual = app.add_subcommand(
      "counterfactual", "solve the without-subset counterfactual");
  add_common_flags(counterfactual, &o);
  counterfactual->add_option("--plan", o.plan_path, "plan file")->required();
  counterfactual->add_option("--scope", scope,
                             "'portfolio' or 'project:<line-id>'");
  counterfactual->add_option("--option", option, "counterfactual option 1-3");
  counterfactual->add_flag("--zero-all-years", zero_all_years,
                           "option 3: remove subset corridors at every node");

  CLI::App* benefits =
      app.add_subcommand("benefits", "participant benefit deltas");
  add_common_flags(benefits, &o);
  benefits->add_option("--plan", o.plan_path, "plan file")->required();
  benefits->add_option("--scope", scope, "'portfolio' or 'project:<line-id>'");
  benefits->add_option("--option", option, "counterfactual option 1-3");
  benefits->add_flag("--zero-all-years", zero_all_years,
                     "option 3: remove subset corridors at every node");

  CLI::App* allocate =
      app.add_subcommand("allocate", "beneficiaries-pay cost allocation");
  allocate->add_option("--deltas", deltas_path,
                       "benefit-vector file (skips the model pipeline)");
  allocate->add_option("--case", o.case_path, "case file (JSON)");
  allocate->add_option("--tree", o.tree_path, "scenario tree file (JSON)");
  allocate->add_option("--plan", o.plan_path, "plan file");
  allocate->add_option("--scope", scope, "'portfolio' or 'project:<line-id>'");
  allocate->add_option("--policy", policy, "load-only | load+gen");
  allocate->add_option("--option", option, "counterfactual option 1-3");
  allocate->add_option("--cost", cost_override, "override the project cost");
  allocate->add_option("--k", o.k, "representative days (0 = full)");
  allocate->add_option("--gap", o.gap, "relative MIP gap");
  allocate->add_option("--seed", o.seed, "clustering / solver seed");
  allocate->add_option("--out", o.out, "output file");
  allocate->add_flag("--compensate-losers", compensate,
                     "emit negative ratios for harmed participants");
  allocate->add_flag("--zero-all-years", zero_all_years,
                     "option 3: remove subset corridors at every node");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "out-of-sample uncertainty-grid sweep");
  add_common_flags(sweep_cmd, &o);
  sweep_cmd->add_option("--plan", o.plan_path, "plan file")->required();
  sweep_cmd->add_option("--grid", grid_path, "uncertainty grid file (JSON)")
      ->required();
  sweep_cmd->add_option("--scope", scope,
                        "'portfolio' or 'project:<line-id>'");
  sweep_cmd->add_option("--option", option,
                        "counterfactual option for the ex ante shares");
  sweep_cmd->add_flag("--zero-all-years", zero_all_years,
                      "option 3: remove subset corridors at every node");
  sweep_cmd->add_flag("--frozen-fleet", frozen_fleet,
                      "disable generation recourse in the evaluation LPs");
  sweep_cmd->add_option(
      "--add", later,
      "later-stage increment '<line-id>:<increment-label>' added to both "
      "networks (repeatable)");

  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "emit the bundled 8-bus benefit vectors as deltas files");
  fixtures->add_option("--out", fixtures_out, "output directory");

  CLI::App* report = app.add_subcommand(
      "report", "end-to-end planning / benefits / allocation report");
  add_common_flags(report, &o);
  report->add_option("--plan", o.plan_path,
                     "plan file (omit to solve the MIP)");
  report->add_option("--policy", policy, "load-only | load+gen");
  report->add_option("--option", option, "counterfactual option 1-3");
  report->add_flag("--zero-all-years", zero_all_years,
                   "option 3: remove subset corridors at every node");
  report->add_flag("--compensate-losers", compensate,
                   "emit negative ratios for harmed participants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (cluster->parsed()) return cmd_cluster(o);
    if (plan->parsed()) return cmd_plan(o);
    if (prices->parsed()) return cmd_prices(o);
    if (counterfactual->parsed()) {
      return cmd_counterfactual(o, scope, option, zero_all_years);
    }
    if (benefits->parsed()) return cmd_benefits(o, scope, option,
                                                zero_all_years);
    if (allocate->parsed()) {
      if (!deltas_path.empty()) {
        return cmd_allocate_deltas(deltas_path, policy, compensate,
                                   cost_override, o.out);
      }
      if (o.case_path.empty() || o.tree_path.empty() || o.plan_path.empty()) {
        throw std::invalid_argument(
            "allocate needs either --deltas or --case/--tree/--plan");
      }
      return cmd_allocate_model(o, scope, policy, compensate, option,
                                zero_all_years);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(o, scope, grid_path, option, zero_all_years,
                       frozen_fleet, later);
    }
    if (fixtures->parsed()) return cmd_fixtures(fixtures_out);
    if (report->parsed()) {
      return cmd_report(o, policy, option, zero_all_years, compensate);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
