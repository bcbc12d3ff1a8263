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

#ifndef GRIDALLOC_FIXTURES_HPP_
#define GRIDALLOC_FIXTURES_HPP_

#include <string>
#include <vector>

namespace gridalloc {

/// Bundled 8-bus benefit vectors used as allocation regression fixtures:
/// per-bus load benefit deltas ($M) for six first-stage projects and their
/// portfolio, with the expected load-only allocation ratios (%).
struct LoadBenefitFixture {
  std::string name;                   // "l2", ..., "portfolio"
  double project_cost = 0.0;          // $M/yr annualized, 0 when unused
  std::vector<double> load_deltas;    // $M per bus, 8 entries
  std::vector<double> expected_ratio; // percent per bus
};

const std::vector<LoadBenefitFixture>& load_benefit_fixtures();
const LoadBenefitFixture& load_fixture(const std::string& name);

/// Expected ratios when the six project allocations are summed and
/// renormalized, for comparison against the portfolio row.
const std::vector<double>& expected_projects_sum_ratio();

/// Pooled load + existing-generation fixture: load deltas as in the
/// portfolio row plus per-bus pooled positive generation benefits
/// (G0-weighted), reproducing the published 22.72% / 77.28% policy split.
struct PooledBenefitFixture {
  std::vector<double> load_deltas;          // $M
  std::vector<double> gen_pooled_deltas;    // $M, already G0-weighted, >= 0
  std::vector<double> expected_load_ratio;  // percent
  std::vector<double> expected_gen_ratio;   // percent
  double expected_load_share = 0.0;         // 22.72
  double expected_gen_share = 0.0;          // 77.28
};

const PooledBenefitFixture& pooled_benefit_fixture();

}  // namespace gridalloc

#endif  // GRIDALLOC_FIXTURES_HPP_
