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

#include <cmath>

#include "doctest.h"

using namespace gridalloc;

namespace {

HourlySeries synthetic_year(int days) {
  HourlySeries s(days * 24);
  for (int h = 0; h < static_cast<int>(s.size()); ++h) {
    const int day = h / 24, hod = h % 24;
    s[h] = 1000.0 + 300.0 * std::sin(2 * M_PI * hod / 24.0) +
           150.0 * std::sin(2 * M_PI * day / 7.0);
  }
  return s;
}

}  // namespace

TEST_CASE("net load subtracts scaled renewable profiles") {
  HourlySeries demand = {100, 100, 100};
  std::vector<HourlySeries> profiles = {{0.5, 1.0, 0.0}};
  const HourlySeries out = net_load(demand, profiles, {60.0});
  CHECK(out[0] == doctest::Approx(70));
  CHECK(out[1] == doctest::Approx(40));
  CHECK(out[2] == doctest::Approx(100));
}

TEST_CASE("day clustering is deterministic and conserves weight") {
  const HourlySeries series = synthetic_year(28);
  const TimeBlocks a = cluster_days(series, 4, 17);
  const TimeBlocks b = cluster_days(series, 4, 17);
  REQUIRE(a.blocks.size() == 4);
  int days = 0;
  for (size_t i = 0; i < a.blocks.size(); ++i) {
    CHECK(a.blocks[i].medoid_day == b.blocks[i].medoid_day);
    CHECK(a.blocks[i].days_represented == b.blocks[i].days_represented);
    days += a.blocks[i].days_represented;
  }
  CHECK(days == 28);
  CHECK(a.total_weight() == doctest::Approx(28 * 24.0));
  CHECK(a.dispatch_periods().size() == 4 * 24);
}

TEST_CASE("clustering a 7-day week with k=7 keeps every day") {
  const HourlySeries series = synthetic_year(7);
  const TimeBlocks blocks = cluster_days(series, 7, 0);
  REQUIRE(blocks.blocks.size() == 7);
  for (const TimeBlock& b : blocks.blocks) {
    CHECK(b.days_represented == 1);
  }
}
