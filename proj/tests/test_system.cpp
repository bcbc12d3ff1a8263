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

#include "doctest.h"
#include "toys.hpp"

using namespace gridalloc;

TEST_CASE("triangle shift factors split 2/3 - 1/3 with equal reactances") {
  std::vector<Bus> buses = {{"r", true}, {"a", false}, {"b", false}};
  std::vector<Line> lines = {{"ra", 0, 1, 100, 0.1},
                             {"ab", 1, 2, 100, 0.1},
                             {"br", 2, 0, 100, 0.1}};
  const ShiftFactorMatrix sf = compute_shift_factors(buses, lines, 0);
  // Inject 1 MW at a, withdraw at r: 2/3 flows on the direct edge (a->r,
  // i.e. -2/3 in the r->a orientation), 1/3 around the long way.
  const int col_a = sf.column_of_bus[1];
  CHECK(sf.entries(0, col_a) == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
  CHECK(sf.entries(1, col_a) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(sf.entries(2, col_a) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

  Eigen::VectorXd inj(3);
  inj << -1.0, 1.0, 0.0;
  const Eigen::VectorXd flows = line_flows(sf, inj);
  CHECK(flows(0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("disconnected network is rejected") {
  std::vector<Bus> buses = {{"r", true}, {"a", false}, {"b", false}};
  std::vector<Line> lines = {{"ra", 0, 1, 100, 0.1}};  // b is isolated
  CHECK_THROWS_AS(compute_shift_factors(buses, lines, 0),
                  std::invalid_argument);
}

TEST_CASE("penalty curve greedy fill") {
  PenaltyCurve curve;
  curve.segments = {{5, 250},  {5, 300},   {10, 400},  {10, 500},
                    {10, 1000}, {10, 2250}, {50, 4500}, {0, 5001}};
  SUBCASE("inside the finite segments") {
    const CurtailmentSplit s = curtailment_cost(55.0, curve);
    // 5+5+10+10+10+10 fills the first six; 5 spill into the 4500 band.
    CHECK(s.segment_mw[0] == doctest::Approx(5));
    CHECK(s.segment_mw[5] == doctest::Approx(10));
    CHECK(s.segment_mw[6] == doctest::Approx(5));
    CHECK(s.segment_mw[7] == doctest::Approx(0));
    const double expect = 5 * 250 + 5 * 300 + 10 * 400 + 10 * 500 +
                          10 * 1000 + 10 * 2250 + 5 * 4500;
    CHECK(s.cost == doctest::Approx(expect));
  }
  SUBCASE("overflow lands in the unbounded tail") {
    const CurtailmentSplit s = curtailment_cost(150.0, curve);
    CHECK(s.segment_mw[6] == doctest::Approx(50));
    CHECK(s.segment_mw[7] == doctest::Approx(50));
  }
  SUBCASE("zero violation costs nothing") {
    CHECK(curtailment_cost(0.0, curve).cost == doctest::Approx(0));
  }
}

TEST_CASE("case validation") {
  SystemCase sys = toys::two_bus(50.0);
  CHECK(validate_case(sys).empty());

  SUBCASE("two reference buses") {
    sys.buses[1].is_reference = true;
    CHECK_FALSE(validate_case(sys).empty());
  }
  SUBCASE("self-loop line") {
    sys.lines[0].to_bus = 0;
    CHECK_FALSE(validate_case(sys).empty());
  }
  SUBCASE("decreasing penalty prices") {
    sys.penalty.segments = {{5, 300}, {0, 250}};
    CHECK_FALSE(validate_case(sys).empty());
  }
}
