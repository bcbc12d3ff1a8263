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

#ifndef GRIDALLOC_IO_HPP_
#define GRIDALLOC_IO_HPP_

#include <string>
#include <vector>

#include "gridalloc/optimizer.hpp"
#include "gridalloc/scenario.hpp"
#include "gridalloc/system.hpp"

namespace gridalloc {

/// Loads a case file (JSON). Hourly tables (demand, per-technology
/// availability) may be inline arrays or paths to delimited text files
/// resolved relative to the case file. Throws std::invalid_argument with a
/// descriptive message on any malformed input.
SystemCase load_case(const std::string& path);

/// Loads a scenario tree (JSON). Per-node fuel/investment costs may be
/// given absolutely (`fuel_cost`, `invest_cost` maps by technology id) or
/// as multipliers on the technology base values (`fuel_scale`,
/// `invest_scale`); resolved values are materialized onto each node.
ScenarioTree load_tree(const std::string& path, const SystemCase& sys);

/// Loads an uncertainty grid definition (JSON): named dimensions with
/// exactly three levels each carrying optional data overrides.
UncertaintyGrid load_grid(const std::string& path);

/// Delimited numeric table: header row of bus ids, one row per hour,
/// whitespace/comma separated, '#' comments ignored. Returns buses x hours
/// ordered as `bus_ids`.
Eigen::MatrixXd load_series_table(const std::string& path,
                                  const std::vector<std::string>& bus_ids);

/// Plan files identify selections by (node id, line id, increment label) so
/// they survive model rebuilds.
void save_plan(const std::string& path, const ExpansionPlan& plan,
               const ExpansionModel& em);
ExpansionPlan load_plan(const std::string& path, const ExpansionModel& em);

/// Reads a whole file; throws std::invalid_argument when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gridalloc

#endif  // GRIDALLOC_IO_HPP_
