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

#ifndef GRIDALLOC_TIMESERIES_HPP_
#define GRIDALLOC_TIMESERIES_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace gridalloc {

using HourlySeries = std::vector<double>;

/// One representative day selected by clustering. The medoid day stands in
/// for `days_represented` source days, so each of its 24 hours carries a
/// weight of `days_represented` hours.
struct TimeBlock {
  int medoid_day = 0;               // day index in the source year
  int days_represented = 0;         // cluster size
  double weight_hours() const { return 24.0 * days_represented; }
  std::vector<int> hour_indices() const {
    std::vector<int> h(24);
    for (int i = 0; i < 24; ++i) h[i] = medoid_day * 24 + i;
    return h;
  }
};

/// A flattened dispatch period: one hour of a representative day, weighted
/// by the number of source days its block represents.
struct DispatchPeriod {
  int hour = 0;          // hour index in the source year
  double weight = 0.0;   // hours represented
};

struct TimeBlocks {
  std::vector<TimeBlock> blocks;
  int source_hours = 0;

  double total_weight() const {
    double s = 0.0;
    for (const auto& b : blocks) s += b.weight_hours();
    return s;
  }
  std::vector<DispatchPeriod> dispatch_periods() const {
    std::vector<DispatchPeriod> out;
    for (const auto& b : blocks) {
      for (int h : b.hour_indices()) {
        out.push_back({h, static_cast<double>(b.days_represented)});
      }
    }
    return out;
  }
};

/// demand - sum_profiles(profile * capacity); may go negative.
HourlySeries net_load(const HourlySeries& demand,
                      const std::vector<HourlySeries>& renewable_profiles,
                      const std::vector<double>& renewable_capacity_mw);

/// K-means over 24-dimensional day vectors of the (standardized) net load,
/// k-means++ seeding, medoid representatives, deterministic for a given
/// seed. Ties in assignment break toward the lowest day index.
TimeBlocks cluster_days(const HourlySeries& series, int k, std::uint64_t seed);

}  // namespace gridalloc

#endif  // GRIDALLOC_TIMESERIES_HPP_
