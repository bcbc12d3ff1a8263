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

#include "gridalloc/system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gridalloc {

int SystemCase::reference_bus() const {
  for (int b = 0; b < static_cast<int>(buses.size()); ++b) {
    if (buses[b].is_reference) return b;
  }
  return -1;
}

int SystemCase::bus_index(const std::string& id) const {
  for (int b = 0; b < static_cast<int>(buses.size()); ++b) {
    if (buses[b].id == id) return b;
  }
  return -1;
}

int SystemCase::line_index(const std::string& id) const {
  for (int l = 0; l < static_cast<int>(lines.size()); ++l) {
    if (lines[l].id == id) return l;
  }
  return -1;
}

int SystemCase::tech_index(const std::string& id) const {
  for (int g = 0; g < static_cast<int>(technologies.size()); ++g) {
    if (technologies[g].id == id) return g;
  }
  return -1;
}

ShiftFactorMatrix SystemCase::shift_factors(bool* warned) const {
  if (warned) *warned = false;
  const bool can_compute = std::all_of(
      lines.begin(), lines.end(), [](const Line& l) { return l.reactance.has_value(); });
  if (ingested_sf) {
    if (can_compute && warned) {
      ShiftFactorMatrix computed =
          compute_shift_factors(buses, lines, reference_bus());
      if ((computed.entries - ingested_sf->entries).cwiseAbs().maxCoeff() >
          1e-6) {
        *warned = true;
      }
    }
    return *ingested_sf;
  }
  if (!can_compute) {
    throw std::invalid_argument(
        "case has neither ingested shift factors nor reactances on all lines");
  }
  return compute_shift_factors(buses, lines, reference_bus());
}

ShiftFactorMatrix compute_shift_factors(const std::vector<Bus>& buses,
                                        const std::vector<Line>& lines,
                                        int reference_bus) {
  const int nb = static_cast<int>(buses.size());
  const int nl = static_cast<int>(lines.size());
  if (reference_bus < 0 || reference_bus >= nb) {
    throw std::invalid_argument("invalid reference bus");
  }

  // Connectivity check over the line graph.
  std::vector<int> comp(nb);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& ln : lines) {
    if (ln.from_bus == ln.to_bus) {
      throw std::invalid_argument("line " + ln.id + " has identical endpoints");
    }
    comp[find(ln.from_bus)] = find(ln.to_bus);
  }
  for (int b = 0; b < nb; ++b) {
    if (find(b) != find(reference_bus)) {
      throw std::invalid_argument("network is disconnected");
    }
  }

  ShiftFactorMatrix sf;
  sf.column_of_bus.assign(nb, -1);
  for (int b = 0; b < nb; ++b) {
    if (b == reference_bus) continue;
    sf.column_of_bus[b] = static_cast<int>(sf.bus_columns.size());
    sf.bus_columns.push_back(b);
  }
  const int nb_red = nb - 1;

  // Reduced susceptance matrix B' and branch incidence weighted by 1/x.
  Eigen::MatrixXd bred = Eigen::MatrixXd::Zero(nb_red, nb_red);
  Eigen::MatrixXd binc = Eigen::MatrixXd::Zero(nl, nb_red);
  for (int l = 0; l < nl; ++l) {
    const auto& ln = lines[l];
    if (!ln.reactance || *ln.reactance <= 0.0) {
      throw std::invalid_argument("line " + ln.id +
                                  " needs a positive reactance");
    }
    const double susc = 1.0 / *ln.reactance;
    const int ci = sf.column_of_bus[ln.from_bus];
    const int cj = sf.column_of_bus[ln.to_bus];
    if (ci >= 0) {
      bred(ci, ci) += susc;
      binc(l, ci) += susc;
    }
    if (cj >= 0) {
      bred(cj, cj) += susc;
      binc(l, cj) -= susc;
    }
    if (ci >= 0 && cj >= 0) {
      bred(ci, cj) -= susc;
      bred(cj, ci) -= susc;
    }
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(bred);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("singular susceptance system");
  }
  sf.entries = binc * lu.inverse();
  return sf;
}

Eigen::VectorXd line_flows(const ShiftFactorMatrix& sf,
                           const Eigen::VectorXd& injections, double tol) {
  if (std::abs(injections.sum()) > tol) {
    throw std::invalid_argument("injections do not balance to zero");
  }
  Eigen::VectorXd reduced(sf.bus_columns.size());
  for (size_t c = 0; c < sf.bus_columns.size(); ++c) {
    reduced[static_cast<int>(c)] = injections[sf.bus_columns[c]];
  }
  return sf.entries * reduced;
}

CurtailmentSplit curtailment_cost(double total_violation_mw,
                                  const PenaltyCurve& curve) {
  if (total_violation_mw < 0.0) {
    throw std::invalid_argument("violation must be non-negative");
  }
  CurtailmentSplit out;
  out.segment_mw.assign(curve.segments.size(), 0.0);
  double rest = total_violation_mw;
  for (size_t i = 0; i < curve.segments.size() && rest > 0.0; ++i) {
    const auto& seg = curve.segments[i];
    const double fill = seg.unbounded() ? rest : std::min(rest, seg.cap_mw);
    out.segment_mw[i] = fill;
    out.cost += fill * seg.price;
    rest -= fill;
  }
  if (rest > 1e-12) {
    throw std::invalid_argument(
        "violation exceeds the total capacity of the penalty curve");
  }
  return out;
}

std::vector<std::string> validate_case(const SystemCase& sys) {
  std::vector<std::string> errors;
  const int nb = static_cast<int>(sys.buses.size());
  int refs = 0;
  for (const auto& b : sys.buses) refs += b.is_reference ? 1 : 0;
  if (refs != 1) {
    errors.push_back("case must have exactly one reference bus, found " +
                     std::to_string(refs));
  }
  for (const auto& ln : sys.lines) {
    if (ln.from_bus < 0 || ln.from_bus >= nb || ln.to_bus < 0 ||
        ln.to_bus >= nb) {
      errors.push_back("line " + ln.id + " references an unknown bus");
    } else if (ln.from_bus == ln.to_bus) {
      errors.push_back("line " + ln.id + " has identical endpoints");
    }
    if (ln.initial_capacity < 0.0) {
      errors.push_back("line " + ln.id + " has negative initial capacity");
    }
  }
  for (const auto& inc : sys.catalog.increments) {
    if (inc.delta_mw <= 0.0) {
      errors.push_back("increment " + inc.label + " has non-positive size");
    }
  }
  for (const auto& [line, costs] : sys.catalog.line_cost) {
    if (costs.size() != sys.catalog.increments.size()) {
      errors.push_back("line index " + std::to_string(line) +
                       " has a cost row of the wrong length");
    }
  }
  for (size_t i = 1; i < sys.penalty.segments.size(); ++i) {
    if (sys.penalty.segments[i].price < sys.penalty.segments[i - 1].price) {
      errors.push_back("penalty curve prices must be non-decreasing");
    }
    if (sys.penalty.segments[i - 1].unbounded()) {
      errors.push_back("only the last penalty segment may be unbounded");
    }
  }
  if (sys.penalty.gamma_load <= 0.0) {
    errors.push_back("gamma_load must be a positive case-file scalar");
  }
  for (const auto& t : sys.technologies) {
    if (t.c_fix < 0 || t.c_vom < 0 || t.base_c_en < 0 || t.base_c_inv < 0) {
      errors.push_back("technology " + t.id + " has a negative cost");
    }
  }
  const int ng = static_cast<int>(sys.technologies.size());
  if (sys.fleet.existing.rows() != nb || sys.fleet.existing.cols() != ng) {
    errors.push_back("existing-capacity matrix has the wrong shape");
  } else if (sys.fleet.existing.minCoeff() < 0.0) {
    errors.push_back("existing capacity must be non-negative");
  }
  if (static_cast<int>(sys.fleet.availability.size()) != ng) {
    errors.push_back("availability must carry one profile set per technology");
  } else {
    for (int g = 0; g < ng; ++g) {
      const auto& av = sys.fleet.availability[g];
      if (av.rows() != nb || av.cols() != sys.demand.cols()) {
        errors.push_back("availability for " + sys.technologies[g].id +
                         " has the wrong shape");
      } else if (av.minCoeff() < -1e-12 || av.maxCoeff() > 1.0 + 1e-12) {
        errors.push_back("availability for " + sys.technologies[g].id +
                         " is outside [0,1]");
      }
    }
  }
  if (sys.demand.rows() != nb) {
    errors.push_back("demand matrix has the wrong number of buses");
  }
  if (sys.ingested_sf) {
    const int expected_cols = nb - 1;
    if (sys.ingested_sf->entries.rows() !=
            static_cast<int>(sys.lines.size()) ||
        sys.ingested_sf->entries.cols() != expected_cols) {
      errors.push_back("ingested shift-factor matrix has the wrong shape");
    }
  }
  return errors;
}

}  // namespace gridalloc
