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

#include "gridalloc/timeseries.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace gridalloc {

HourlySeries net_load(const HourlySeries& demand,
                      const std::vector<HourlySeries>& renewable_profiles,
                      const std::vector<double>& renewable_capacity_mw) {
  if (renewable_profiles.size() != renewable_capacity_mw.size()) {
    throw std::invalid_argument("profile/capacity count mismatch");
  }
  HourlySeries out = demand;
  for (size_t p = 0; p < renewable_profiles.size(); ++p) {
    const auto& prof = renewable_profiles[p];
    if (prof.size() != demand.size()) {
      throw std::invalid_argument("profile length mismatch");
    }
    for (size_t h = 0; h < out.size(); ++h) {
      out[h] -= prof[h] * renewable_capacity_mw[p];
    }
  }
  return out;
}

namespace {

double sq_dist(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).squaredNorm();
}

}  // namespace

TimeBlocks cluster_days(const HourlySeries& series, int k, std::uint64_t seed) {
  if (series.size() % 24 != 0) {
    throw std::invalid_argument("series length must be divisible by 24");
  }
  const int days = static_cast<int>(series.size()) / 24;
  if (k < 1 || k > days) {
    throw std::invalid_argument("k out of range");
  }

  // Day vectors, standardized per hour-of-day coordinate.
  std::vector<Eigen::VectorXd> pts(days, Eigen::VectorXd(24));
  for (int d = 0; d < days; ++d) {
    for (int h = 0; h < 24; ++h) pts[d][h] = series[d * 24 + h];
  }
  for (int h = 0; h < 24; ++h) {
    double mean = 0.0;
    for (int d = 0; d < days; ++d) mean += pts[d][h];
    mean /= days;
    double var = 0.0;
    for (int d = 0; d < days; ++d) var += (pts[d][h] - mean) * (pts[d][h] - mean);
    const double sd = std::sqrt(var / days);
    const double scale = sd > 1e-12 ? 1.0 / sd : 0.0;
    for (int d = 0; d < days; ++d) pts[d][h] = (pts[d][h] - mean) * scale;
  }

  // k-means++ seeding.
  std::mt19937_64 rng(seed);
  std::vector<Eigen::VectorXd> centroids;
  {
    std::uniform_int_distribution<int> pick(0, days - 1);
    centroids.push_back(pts[pick(rng)]);
    std::vector<double> d2(days);
    while (static_cast<int>(centroids.size()) < k) {
      double total = 0.0;
      for (int d = 0; d < days; ++d) {
        double best = std::numeric_limits<double>::max();
        for (const auto& c : centroids) best = std::min(best, sq_dist(pts[d], c));
        d2[d] = best;
        total += best;
      }
      int chosen = 0;
      if (total <= 1e-300) {
        // All points coincide with existing centroids; take the lowest
        // day not already chosen.
        std::uniform_int_distribution<int> pick2(0, days - 1);
        chosen = pick2(rng);
      } else {
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng);
        for (int d = 0; d < days; ++d) {
          target -= d2[d];
          if (target <= 0.0) {
            chosen = d;
            break;
          }
        }
      }
      centroids.push_back(pts[chosen]);
    }
  }

  std::vector<int> assign(days, 0);
  double prev_wcss = std::numeric_limits<double>::max();
  for (int iter = 0; iter < 200; ++iter) {
    double wcss = 0.0;
    for (int d = 0; d < days; ++d) {
      double best = std::numeric_limits<double>::max();
      int arg = 0;
      for (int c = 0; c < k; ++c) {
        const double dd = sq_dist(pts[d], centroids[c]);
        if (dd < best - 1e-12) {  // strict improvement keeps lowest index on ties
          best = dd;
          arg = c;
        }
      }
      assign[d] = arg;
      wcss += best;
    }
    assert(wcss <= prev_wcss + 1e-6);
    if (std::abs(prev_wcss - wcss) < 1e-12) break;
    prev_wcss = wcss;

    std::vector<Eigen::VectorXd> sums(k, Eigen::VectorXd::Zero(24));
    std::vector<int> counts(k, 0);
    for (int d = 0; d < days; ++d) {
      sums[assign[d]] += pts[d];
      ++counts[assign[d]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster on the point farthest from its centroid.
        int far = 0;
        double best = -1.0;
        for (int d = 0; d < days; ++d) {
          const double dd = sq_dist(pts[d], centroids[assign[d]]);
          if (dd > best) {
            best = dd;
            far = d;
          }
        }
        centroids[c] = pts[far];
      } else {
        centroids[c] = sums[c] / counts[c];
      }
    }
  }

  // Medoid per cluster: the member closest to the centroid, lowest day
  // index on ties.
  TimeBlocks out;
  out.source_hours = static_cast<int>(series.size());
  for (int c = 0; c < k; ++c) {
    int medoid = -1;
    double best = std::numeric_limits<double>::max();
    int count = 0;
    for (int d = 0; d < days; ++d) {
      if (assign[d] != c) continue;
      ++count;
      const double dd = sq_dist(pts[d], centroids[c]);
      if (dd < best - 1e-12) {
        best = dd;
        medoid = d;
      }
    }
    if (count == 0) continue;
    out.blocks.push_back({medoid, count});
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const TimeBlock& a, const TimeBlock& b) {
              return a.medoid_day < b.medoid_day;
            });
  return out;
}

}  // namespace gridalloc
