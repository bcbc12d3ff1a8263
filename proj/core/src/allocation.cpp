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

#include "gridalloc/allocation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gridalloc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

double ratio_of(double delta, double denom, bool compensate) {
  if (compensate) return 100.0 * delta / denom;
  return 100.0 * positive_part(delta) / denom;
}

double bcr_of(double delta, double allocated) {
  if (allocated == 0.0) return kNan;
  return delta / allocated;
}

}  // namespace

AllocationReport allocate_load_only(const std::vector<double>& load_deltas,
                                    double total_cost,
                                    const std::string& scope,
                                    bool compensate_losers) {
  double denom = 0.0;
  for (double d : load_deltas) denom += positive_part(d);
  if (denom <= 0.0) throw std::domain_error("no beneficiaries");

  AllocationReport rep;
  rep.policy = "load-only";
  rep.scope = scope;
  rep.compensate_losers = compensate_losers;
  rep.total_cost = total_cost;
  for (double d : load_deltas) {
    const double r = ratio_of(d, denom, compensate_losers);
    rep.load_ratio.push_back(r);
    rep.load_cost.push_back(r / 100.0 * total_cost);
    rep.load_bcr.push_back(bcr_of(d, rep.load_cost.back()));
  }
  return rep;
}

AllocationReport allocate_load_and_gen(const std::vector<double>& load_deltas,
                                       const Eigen::MatrixXd& gen_unit_deltas,
                                       const Eigen::MatrixXd& existing_g0,
                                       double total_cost,
                                       const std::string& scope,
                                       bool compensate_losers) {
  const int buses = static_cast<int>(load_deltas.size());
  if (gen_unit_deltas.rows() != buses || existing_g0.rows() != buses ||
      gen_unit_deltas.cols() != existing_g0.cols()) {
    throw std::invalid_argument("allocation input dimensions mismatch");
  }
  const int techs = static_cast<int>(gen_unit_deltas.cols());

  // Pooled weighted deltas: load in $, generation as G0 ($/MW * MW).
  Eigen::MatrixXd gen_value = existing_g0.cwiseProduct(gen_unit_deltas);
  double denom = 0.0;
  for (double d : load_deltas) denom += positive_part(d);
  for (int b = 0; b < buses; ++b) {
    for (int g = 0; g < techs; ++g) denom += positive_part(gen_value(b, g));
  }
  if (denom <= 0.0) throw std::domain_error("no beneficiaries");

  AllocationReport rep;
  rep.policy = "load+gen";
  rep.scope = scope;
  rep.compensate_losers = compensate_losers;
  rep.total_cost = total_cost;
  for (double d : load_deltas) {
    const double r = ratio_of(d, denom, compensate_losers);
    rep.load_ratio.push_back(r);
    rep.load_cost.push_back(r / 100.0 * total_cost);
    rep.load_bcr.push_back(bcr_of(d, rep.load_cost.back()));
  }
  rep.gen_ratio.resize(buses, techs);
  rep.gen_cost.resize(buses, techs);
  rep.gen_bcr.resize(buses, techs);
  for (int b = 0; b < buses; ++b) {
    for (int g = 0; g < techs; ++g) {
      const double r = ratio_of(gen_value(b, g), denom, compensate_losers);
      rep.gen_ratio(b, g) = r;
      rep.gen_cost(b, g) = r / 100.0 * total_cost;
      rep.gen_bcr(b, g) = bcr_of(gen_value(b, g), rep.gen_cost(b, g));
    }
  }
  return rep;
}

ScopeComparison compare_scopes(const std::vector<AllocationReport>& projects,
                               const AllocationReport& portfolio,
                               const std::vector<double>& portfolio_deltas) {
  const size_t buses = portfolio.load_ratio.size();
  if (portfolio_deltas.size() != buses) {
    throw std::invalid_argument("portfolio delta vector length mismatch");
  }
  ScopeComparison cmp;
  cmp.summed_cost.assign(buses, 0.0);
  double combined_cost = 0.0;
  for (const AllocationReport& p : projects) {
    if (p.load_ratio.size() != buses) {
      throw std::invalid_argument("project report participant set mismatch");
    }
    cmp.project_ids.push_back(p.scope);
    combined_cost += p.total_cost;
    for (size_t b = 0; b < buses; ++b) cmp.summed_cost[b] += p.load_cost[b];
  }
  for (size_t b = 0; b < buses; ++b) {
    cmp.summed_ratio.push_back(
        combined_cost > 0.0 ? 100.0 * cmp.summed_cost[b] / combined_cost : 0.0);
    cmp.portfolio_cost.push_back(portfolio.load_cost[b]);
    cmp.portfolio_ratio.push_back(portfolio.load_ratio[b]);
    cmp.portfolio_delta.push_back(portfolio_deltas[b]);
    cmp.flagged.push_back(portfolio_deltas[b] < 0.0 &&
                          cmp.summed_cost[b] > 0.0);
  }
  return cmp;
}

}  // namespace gridalloc
