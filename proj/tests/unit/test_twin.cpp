// Copyright 2026 The aeromec Authors
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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <aeromec/error.hpp>
#include <aeromec/twin.hpp>

#include "../support/oracles.hpp"

using namespace aeromec;

TEST_CASE("noise floor conversion") {
    // mpmath: 10^((-110-30)/10)
    CHECK(dbm_to_watts(-110.0) == doctest::Approx(1e-14).epsilon(1e-14));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
}

TEST_CASE("euclidean distance") {
    CHECK(distance({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0));
    CHECK(distance({1, 1, 1}, {1, 1, 801}) == doctest::Approx(800.0));
    CHECK(distance({2, 2, 2}, {2, 2, 2}) == 0.0);
}

TEST_CASE("snapshot keeps derived link quantities consistent") {
    const MedTwin med = testing::med_at_origin();
    std::vector<UavTwin> fleet{testing::uav_at(0, 0, 800), testing::uav_at(300, 400, 800, 3.0)};
    const NetworkState s = snapshot(med, fleet, 16e6, 7);
    REQUIRE(s.size() == 2);
    CHECK(s.slot_index == 7);
    for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(s.capacities[j] == doctest::Approx(s.capacity_at(j, fleet[j].bandwidth_max)));
        CHECK(s.capacity_at(j, 0.0) == 0.0);
    }
    CHECK(s.gains[0] == doctest::Approx(2.44140625e-12));
    CHECK(s.gains[1] < s.gains[0]);
}

TEST_CASE("snapshot rejects broken twins") {
    const MedTwin med = testing::med_at_origin();
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::io_failure;
    };
    CHECK(kind_of([&] { snapshot(med, {}, 16e6, 0); }) == ErrorKind::invalid_scenario);
    CHECK(kind_of([&] { snapshot(med, {testing::uav_at(0, 0, 0)}, 16e6, 0); })
          == ErrorKind::degenerate_geometry);
    UavTwin bad = testing::uav_at(0, 0, 800);
    bad.bandwidth_max = 0.0;
    CHECK(kind_of([&] { snapshot(med, {bad}, 16e6, 0); }) == ErrorKind::invalid_scenario);
    bad = testing::uav_at(0, 0, 800);
    bad.chip_coeff = -1.0;
    CHECK(kind_of([&] { snapshot(med, {bad}, 16e6, 0); }) == ErrorKind::invalid_scenario);
    MedTwin late = med;
    late.deadline = 0.0;
    CHECK(kind_of([&] { snapshot(late, {testing::uav_at(0, 0, 800)}, 16e6, 0); })
          == ErrorKind::invalid_scenario);
    CHECK(kind_of([&] { snapshot(med, {testing::uav_at(0, 0, 800)}, 0.0, 0); })
          == ErrorKind::invalid_scenario);
}

TEST_CASE("weight validation") {
    WeightConfig w;
    CHECK_NOTHROW(validate(w));
    w.hover_penalty = -0.1;
    CHECK_THROWS_AS(validate(w), Error);
    w = {};
    w.share_unit = 0.0;
    CHECK_THROWS_AS(validate(w), Error);
}
