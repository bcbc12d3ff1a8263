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

#ifndef GRIDALLOC_SYSTEM_HPP_
#define GRIDALLOC_SYSTEM_HPP_

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gridalloc {

struct Bus {
  std::string id;
  bool is_reference = false;
};

struct Line {
  std::string id;
  int from_bus = -1;
  int to_bus = -1;
  double initial_capacity = 0.0;  // MW
  std::optional<double> reactance;  // per unit; optional when SF is ingested
};

/// Row per line, column per non-reference bus (reference column absent).
/// Positive entry: injection at the bus pushes flow in the line's
/// from->to direction.
struct ShiftFactorMatrix {
  Eigen::MatrixXd entries;           // lines x non-reference buses
  std::vector<int> bus_columns;      // bus index for each column
  std::vector<int> column_of_bus;    // -1 for the reference bus
};

struct Increment {
  std::string label;
  double delta_mw = 0.0;  // MW added when selected
};

/// Expansion menu. A line appears in `line_cost` only if it is expandable;
/// cost is $/yr annualized, one entry per increment type.
struct IncrementCatalog {
  std::vector<Increment> increments;
  std::map<int, std::vector<double>> line_cost;  // line index -> cost by q

  bool expandable(int line) const { return line_cost.count(line) > 0; }
};

struct PenaltySegment {
  double cap_mw = 0.0;        // system-wide cap, <=0 means unbounded
  double price = 0.0;         // $/MWh
  bool unbounded() const { return cap_mw <= 0.0; }
};

struct PenaltyCurve {
  std::vector<PenaltySegment> segments;  // prices non-decreasing
  double gamma_line = 0.0;               // $/MWh line violation price
  double gamma_load = 0.0;               // $/MWh value of served load
};

struct Technology {
  std::string id;
  bool is_renewable = false;
  double c_fix = 0.0;       // $/MW-yr
  double c_vom = 0.0;       // $/MWh
  double base_c_en = 0.0;   // $/MWh, per-node values may override
  double base_c_inv = 0.0;  // $/MW-yr, per-node values may override
};

/// Existing capacity and hourly availability per (bus, technology).
struct FleetState {
  Eigen::MatrixXd existing;  // buses x techs, MW
  // availability[g] is buses x hours in [0,1]; a row of ones when a
  // technology is always available.
  std::vector<Eigen::MatrixXd> availability;
};

struct SystemCase {
  std::string name;
  std::vector<Bus> buses;
  std::vector<Line> lines;
  std::optional<ShiftFactorMatrix> ingested_sf;
  IncrementCatalog catalog;
  PenaltyCurve penalty;
  std::vector<Technology> technologies;
  FleetState fleet;
  Eigen::MatrixXd demand;  // buses x hours, MW
  double discount_rate = 0.0;
  int period_years = 1;

  int reference_bus() const;
  int bus_index(const std::string& id) const;
  int line_index(const std::string& id) const;
  int tech_index(const std::string& id) const;
  int hours() const { return static_cast<int>(demand.cols()); }

  /// Ingested shift factors win over computed ones; `warned` is set when
  /// both are present and they disagree beyond 1e-6.
  ShiftFactorMatrix shift_factors(bool* warned = nullptr) const;
};

/// DC power-transfer-distribution factors with respect to the reference
/// bus. Throws std::invalid_argument on a disconnected network or
/// non-positive reactances.
ShiftFactorMatrix compute_shift_factors(const std::vector<Bus>& buses,
                                        const std::vector<Line>& lines,
                                        int reference_bus);

/// flow_l = sum_b SF_{l,b} * NI_b over non-reference buses. Injections must
/// balance to zero within `tol` MW.
Eigen::VectorXd line_flows(const ShiftFactorMatrix& sf,
                           const Eigen::VectorXd& injections,
                           double tol = 1e-6);

struct CurtailmentSplit {
  double cost = 0.0;                   // $/h
  std::vector<double> segment_mw;      // fill per segment
};

/// Greedy fill of the penalty segments in order; prices are non-decreasing
/// so the greedy split is the cost-minimal one.
CurtailmentSplit curtailment_cost(double total_violation_mw,
                                  const PenaltyCurve& curve);

/// Case-level structural checks (single reference bus, distinct endpoints,
/// capacity and cost signs, segment price monotonicity, dimensions).
std::vector<std::string> validate_case(const SystemCase& sys);

}  // namespace gridalloc

#endif  // GRIDALLOC_SYSTEM_HPP_
