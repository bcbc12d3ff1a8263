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

#include "gridalloc/fixtures.hpp"

#include <stdexcept>

namespace gridalloc {

const std::vector<LoadBenefitFixture>& load_benefit_fixtures() {
  static const std::vector<LoadBenefitFixture> fixtures = {
      {"l2",
       154.96,
       {4904, -1488, -1509, -171, -831, -15, -2015, 411},
       {92.27, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 7.73}},
      {"l3",
       78.34,
       {3668, -2279, -61, -625, -2233, -104, -908, -2170},
       {100.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}},
      {"l6",
       72.64,
       {-67, 2600, -2, 1, 53, -9, -1887, 132},
       {0.0, 93.32, 0.0, 0.04, 1.90, 0.0, 0.0, 4.74}},
      {"l7",
       98.79,
       {-456, -1714, -912, 304, 85, -159, -1525, 795},
       {0.0, 0.0, 0.0, 25.68, 7.18, 0.0, 0.0, 67.15}},
      {"l10",
       78.34,
       {181, -2333, -10, -149, -1439, -146, -910, 2288},
       {7.33, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 92.67}},
      {"l12",
       78.34,
       {12, 196, -5, 77, 1195, 12, -1848, 336},
       {0.66, 10.72, 0.0, 4.21, 65.37, 0.66, 0.0, 18.38}},
      {"portfolio",
       561.41,  // the six project costs combined
       {6215, 2281, -1379, -453, -120, 15, -3250, 2360},
       {57.17, 20.98, 0.0, 0.0, 0.0, 0.14, 0.0, 21.71}},
  };
  return fixtures;
}

const LoadBenefitFixture& load_fixture(const std::string& name) {
  for (const LoadBenefitFixture& f : load_benefit_fixtures()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown benefit fixture '" + name + "'");
}

const std::vector<double>& expected_projects_sum_ratio() {
  // Summing the six per-project allocated costs above and renormalizing.
  static const std::vector<double> ratio = {40.54, 13.57, 0.0,  5.11,
                                            10.63, 0.09,  0.00, 30.06};
  return ratio;
}

const PooledBenefitFixture& pooled_benefit_fixture() {
  static const PooledBenefitFixture fixture = {
      {6215, 2281, -1379, -453, -120, 15, -3250, 2360},
      // Pooled positive generation benefits per bus (G0-weighted, $M).
      {0.0, 4.7848, 22239.6162, 5358.9437, 14.3543, 33.4934, 8277.6540,
       1047.8649},
      {12.99, 4.77, 0.0, 0.0, 0.0, 0.03, 0.0, 4.93},
      {0.0, 0.01, 46.48, 11.2, 0.03, 0.07, 17.3, 2.19},
      22.72,
      77.28,
  };
  return fixture;
}

}  // namespace gridalloc
