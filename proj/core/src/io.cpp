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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gridalloc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

namespace {

json parse_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::string tok;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!tok.empty()) out.push_back(std::move(tok)), tok.clear();
    } else {
      tok.push_back(c);
    }
  }
  if (!tok.empty()) out.push_back(std::move(tok));
  return out;
}

/// A series spec may be: a path string, a scalar (constant for every bus
/// and hour), or an array of per-bus rows.
Eigen::MatrixXd resolve_series(const json& spec, const std::string& path,
                               const fs::path& base_dir,
                               const std::vector<std::string>& bus_ids,
                               int hours_hint) {
  const int buses = static_cast<int>(bus_ids.size());
  if (spec.is_string()) {
    return load_series_table((base_dir / spec.get<std::string>()).string(),
                             bus_ids);
  }
  if (spec.is_number()) {
    if (hours_hint <= 0) fail(path, "scalar series needs a known horizon");
    return Eigen::MatrixXd::Constant(buses, hours_hint,
                                     spec.get<double>());
  }
  if (spec.is_array()) {
    if (static_cast<int>(spec.size()) != buses) {
      fail(path, "inline series must have one row per bus");
    }
    const int hours = static_cast<int>(spec.at(0).size());
    Eigen::MatrixXd m(buses, hours);
    for (int b = 0; b < buses; ++b) {
      if (static_cast<int>(spec.at(b).size()) != hours) {
        fail(path, "inline series rows have unequal lengths");
      }
      for (int h = 0; h < hours; ++h) m(b, h) = spec.at(b).at(h).get<double>();
    }
    return m;
  }
  fail(path, "series must be a path, a scalar, or a per-bus array");
}

DataOverride parse_override(const json& j) {
  DataOverride o;
  if (j.contains("demand_scale")) o.demand_scale = j.at("demand_scale").get<double>();
  if (j.contains("rps")) o.rps = j.at("rps").get<double>();
  if (j.contains("fuel_scale")) {
    for (auto& [k, v] : j.at("fuel_scale").items()) {
      o.fuel_scale[k] = v.get<double>();
    }
  }
  if (j.contains("invest_scale")) {
    for (auto& [k, v] : j.at("invest_scale").items()) {
      o.invest_scale[k] = v.get<double>();
    }
  }
  return o;
}

}  // namespace

Eigen::MatrixXd load_series_table(const std::string& path,
                                  const std::vector<std::string>& bus_ids) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read series file: " + path);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    const std::vector<std::string> toks = split_tokens(line);
    if (toks.empty()) continue;
    if (header.empty()) {
      header = toks;
      continue;
    }
    if (toks.size() != header.size()) {
      fail(path, "row has " + std::to_string(toks.size()) +
                     " values, header has " + std::to_string(header.size()));
    }
    std::vector<double> row(toks.size());
    for (size_t c = 0; c < toks.size(); ++c) {
      try {
        row[c] = std::stod(toks[c]);
      } catch (const std::exception&) {
        fail(path, "non-numeric value '" + toks[c] + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (header.empty()) fail(path, "missing header row of bus ids");

  std::vector<int> col_of(bus_ids.size(), -1);
  for (size_t b = 0; b < bus_ids.size(); ++b) {
    for (size_t c = 0; c < header.size(); ++c) {
      if (header[c] == bus_ids[b]) col_of[b] = static_cast<int>(c);
    }
    if (col_of[b] < 0) fail(path, "missing column for bus '" + bus_ids[b] + "'");
  }
  Eigen::MatrixXd m(bus_ids.size(), rows.size());
  for (size_t h = 0; h < rows.size(); ++h) {
    for (size_t b = 0; b < bus_ids.size(); ++b) m(b, h) = rows[h][col_of[b]];
  }
  return m;
}

SystemCase load_case(const std::string& path) {
  const json j = parse_json(path);
  const fs::path base_dir = fs::path(path).parent_path();
  SystemCase sys;
  try {
    sys.name = j.value("name", "");
    sys.discount_rate = j.at("discount_rate").get<double>();
    sys.period_years = j.value("period_years", 1);

    std::vector<std::string> bus_ids;
    for (const json& bj : j.at("buses")) {
      Bus b;
      b.id = bj.at("id").get<std::string>();
      b.is_reference = bj.value("reference", false);
      bus_ids.push_back(b.id);
      sys.buses.push_back(std::move(b));
    }
    for (const json& lj : j.at("lines")) {
      Line l;
      l.id = lj.at("id").get<std::string>();
      const std::string from = lj.at("from").get<std::string>();
      const std::string to = lj.at("to").get<std::string>();
      l.initial_capacity = lj.at("capacity_mw").get<double>();
      if (lj.contains("reactance")) l.reactance = lj.at("reactance").get<double>();
      for (size_t b = 0; b < bus_ids.size(); ++b) {
        if (bus_ids[b] == from) l.from_bus = static_cast<int>(b);
        if (bus_ids[b] == to) l.to_bus = static_cast<int>(b);
      }
      if (l.from_bus < 0 || l.to_bus < 0) {
        fail(path, "line '" + l.id + "' references an unknown bus");
      }
      sys.lines.push_back(std::move(l));
    }

    if (j.contains("shift_factors")) {
      const json& sj = j.at("shift_factors");
      ShiftFactorMatrix sf;
      sf.column_of_bus.assign(sys.buses.size(), -1);
      for (const json& cj : sj.at("columns")) {
        const int b = sys.bus_index(cj.get<std::string>());
        if (b < 0) fail(path, "shift factor column for unknown bus");
        sf.column_of_bus[b] = static_cast<int>(sf.bus_columns.size());
        sf.bus_columns.push_back(b);
      }
      sf.entries.resize(sys.lines.size(), sf.bus_columns.size());
      for (size_t l = 0; l < sys.lines.size(); ++l) {
        const json& row = sj.at("rows").at(sys.lines[l].id);
        if (row.size() != sf.bus_columns.size()) {
          fail(path, "shift factor row length mismatch for " + sys.lines[l].id);
        }
        for (size_t c = 0; c < sf.bus_columns.size(); ++c) {
          sf.entries(l, c) = row.at(c).get<double>();
        }
      }
      sys.ingested_sf = std::move(sf);
    }

    for (const json& ij : j.at("increments")) {
      sys.catalog.increments.push_back(
          {ij.at("label").get<std::string>(), ij.at("delta_mw").get<double>()});
    }
    if (j.contains("line_costs")) {
      for (auto& [lid, costs] : j.at("line_costs").items()) {
        const int l = sys.line_index(lid);
        if (l < 0) fail(path, "line_costs for unknown line '" + lid + "'");
        if (costs.size() != sys.catalog.increments.size()) {
          fail(path, "line_costs for '" + lid +
                         "' must have one value per increment");
        }
        sys.catalog.line_cost[l] = costs.get<std::vector<double>>();
      }
    }

    const json& pj = j.at("penalty");
    sys.penalty.gamma_load = pj.at("gamma_load").get<double>();
    sys.penalty.gamma_line = pj.at("gamma_line").get<double>();
    for (const json& seg : pj.at("segments")) {
      PenaltySegment s;
      s.cap_mw = seg.value("cap_mw", 0.0);  // absent or <=0: unbounded
      s.price = seg.at("price").get<double>();
      sys.penalty.segments.push_back(s);
    }

    for (const json& tj : j.at("technologies")) {
      Technology t;
      t.id = tj.at("id").get<std::string>();
      t.is_renewable = tj.value("renewable", false);
      t.c_fix = tj.value("c_fix", 0.0);
      t.c_vom = tj.value("c_vom", 0.0);
      t.base_c_en = tj.value("c_en", 0.0);
      t.base_c_inv = tj.value("c_inv", 0.0);
      sys.technologies.push_back(std::move(t));
    }

    sys.demand = resolve_series(j.at("demand"), path, base_dir, bus_ids, 0);
    const int hours = static_cast<int>(sys.demand.cols());

    const json& fj = j.at("fleet");
    sys.fleet.existing =
        Eigen::MatrixXd::Zero(sys.buses.size(), sys.technologies.size());
    for (auto& [bid, per_tech] : fj.at("existing").items()) {
      const int b = sys.bus_index(bid);
      if (b < 0) fail(path, "fleet entry for unknown bus '" + bid + "'");
      for (auto& [tid, mw] : per_tech.items()) {
        const int g = sys.tech_index(tid);
        if (g < 0) fail(path, "fleet entry for unknown technology '" + tid + "'");
        sys.fleet.existing(b, g) = mw.get<double>();
      }
    }
    sys.fleet.availability.assign(
        sys.technologies.size(),
        Eigen::MatrixXd::Ones(sys.buses.size(), hours));
    if (fj.contains("availability")) {
      for (auto& [tid, spec] : fj.at("availability").items()) {
        const int g = sys.tech_index(tid);
        if (g < 0) fail(path, "availability for unknown technology '" + tid + "'");
        sys.fleet.availability[g] =
            resolve_series(spec, path, base_dir, bus_ids, hours);
        if (sys.fleet.availability[g].cols() != hours) {
          fail(path, "availability horizon mismatch for '" + tid + "'");
        }
      }
    }
  } catch (const json::exception& e) {
    fail(path, e.what());
  }
  return sys;
}

ScenarioTree load_tree(const std::string& path, const SystemCase& sys) {
  const json j = parse_json(path);
  std::vector<ScenarioNode> nodes;
  const int techs = static_cast<int>(sys.technologies.size());
  try {
    for (const json& nj : j.at("nodes")) {
      ScenarioNode n;
      n.id = nj.at("id").get<std::string>();
      if (nj.contains("parent") && !nj.at("parent").is_null()) {
        n.parent = nj.at("parent").get<std::string>();
      }
      n.depth = nj.at("depth").get<int>();
      n.probability = nj.at("probability").get<double>();
      n.demand_scale = nj.value("demand_scale", 1.0);
      n.rps = nj.value("rps", 0.0);
      n.fuel_cost.resize(techs);
      n.invest_cost.resize(techs);
      for (int g = 0; g < techs; ++g) {
        const std::string& tid = sys.technologies[g].id;
        double fuel = sys.technologies[g].base_c_en;
        double inv = sys.technologies[g].base_c_inv;
        if (nj.contains("fuel_scale") && nj.at("fuel_scale").contains(tid)) {
          fuel *= nj.at("fuel_scale").at(tid).get<double>();
        }
        if (nj.contains("fuel_cost") && nj.at("fuel_cost").contains(tid)) {
          fuel = nj.at("fuel_cost").at(tid).get<double>();
        }
        if (nj.contains("invest_scale") && nj.at("invest_scale").contains(tid)) {
          inv *= nj.at("invest_scale").at(tid).get<double>();
        }
        if (nj.contains("invest_cost") && nj.at("invest_cost").contains(tid)) {
          inv = nj.at("invest_cost").at(tid).get<double>();
        }
        n.fuel_cost[g] = fuel;
        n.invest_cost[g] = inv;
      }
      nodes.push_back(std::move(n));
    }
  } catch (const json::exception& e) {
    fail(path, e.what());
  }
  return ScenarioTree::from_nodes(std::move(nodes));
}

UncertaintyGrid load_grid(const std::string& path) {
  const json j = parse_json(path);
  UncertaintyGrid grid;
  try {
    for (const json& dj : j.at("dimensions")) {
      GridDimension dim;
      dim.name = dj.at("name").get<std::string>();
      for (const json& lj : dj.at("levels")) {
        GridLevel lvl;
        lvl.name = lj.at("name").get<std::string>();
        lvl.data = parse_override(lj);
        dim.levels.push_back(std::move(lvl));
      }
      grid.dimensions.push_back(std::move(dim));
    }
  } catch (const json::exception& e) {
    fail(path, e.what());
  }
  return grid;
}

void save_plan(const std::string& path, const ExpansionPlan& plan,
               const ExpansionModel& em) {
  json j;
  j["objective"] = plan.objective;
  j["best_bound"] = plan.best_bound;
  j["selected"] = json::array();
  for (const LineSelection& s : plan.selected) {
    j["selected"].push_back(
        {{"node", em.tree().node(s.node).id},
         {"line", em.system().lines[s.line].id},
         {"increment", em.system().catalog.increments[s.increment].label}});
  }
  json builds = json::array();
  const Dims& d = em.dims();
  for (int n = 0; n < d.nodes; ++n) {
    for (int b = 0; b < d.buses; ++b) {
      for (int g = 0; g < d.techs; ++g) {
        const double mw = plan.build_mw.empty()
                              ? 0.0
                              : plan.build_mw[d.nbg(n, b, g)];
        if (mw > 1e-3) {
          builds.push_back({{"node", em.tree().node(n).id},
                            {"bus", em.system().buses[b].id},
                            {"tech", em.system().technologies[g].id},
                            {"mw", mw}});
        }
      }
    }
  }
  j["builds_mw"] = std::move(builds);
  write_file(path, j.dump(2) + "\n");
}

ExpansionPlan load_plan(const std::string& path, const ExpansionModel& em) {
  const json j = parse_json(path);
  ExpansionPlan plan;
  plan.w.assign(em.num_w(), 0.0);
  try {
    plan.objective = j.value("objective", 0.0);
    plan.best_bound = j.value("best_bound", plan.objective);
    for (const json& sj : j.at("selected")) {
      const int n = em.tree().index_of(sj.at("node").get<std::string>());
      const int l = em.system().line_index(sj.at("line").get<std::string>());
      const std::string label = sj.at("increment").get<std::string>();
      int q = -1;
      for (size_t i = 0; i < em.system().catalog.increments.size(); ++i) {
        if (em.system().catalog.increments[i].label == label) {
          q = static_cast<int>(i);
        }
      }
      if (n < 0 || l < 0 || q < 0) {
        fail(path, "plan selection references unknown node/line/increment");
      }
      const int slot = em.w_slot(n, l, q);
      if (slot < 0) fail(path, "plan selects a non-expandable line");
      plan.w[slot] = 1.0;
      plan.selected.push_back({n, l, q});
    }
  } catch (const json::exception& e) {
    fail(path, e.what());
  }
  return plan;
}

}  // namespace gridalloc
