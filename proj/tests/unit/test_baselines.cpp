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

#include <aeromec/baselines.hpp>
#include <aeromec/error.hpp>

#include "../support/oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace aeromec;

namespace {

// Four close UAVs with large caches and a small task: nothing binds.
NetworkState roomy(double task_mbyte) {
    std::vector<UavTwin> fleet;
    for (int k = 0; k < 4; ++k) {
        fleet.push_back(testing::uav_at(10.0 * k, 0, 50, 2.0, 10.0, 50.0));
    }
    return snapshot(testing::med_at_origin(task_mbyte, 100.0, 0.1, 0.5), fleet, 16e6, 0);
}

} // namespace

TEST_CASE("strategy names") {
    for (StrategyId id : {StrategyId::coalition_game, StrategyId::grand_coalition, StrategyId::nash}) {
        CHECK(strategy_from_string(to_string(id)) == id);
    }
    CHECK_THROWS_AS(strategy_from_string("greedy"), Error);
}

TEST_CASE("grand coalition splits evenly") {
    const NetworkState s = roomy(2.0);
    const Partition p = grand_coalition(s, {});
    REQUIRE(p.coalitions.size() == 1);
    CHECK(p.coalitions[0].size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(p.allocations[0].shares[k] == doctest::Approx(s.med.task_size / 4));
        CHECK(p.allocations[0].bandwidths[k] == doctest::Approx(2e6));
    }
    CHECK(max_constraint_violation(p.allocations[0], s) <= 1e-9);
}

TEST_CASE("grand coalition with nothing to do") {
    const Partition p = grand_coalition(roomy(0.0), {});
    for (double x : p.allocations[0].shares) {
        CHECK(x == 0.0);
    }
    CHECK_FALSE(p.serving[0]);
    CHECK(p.allocations[0].energy.total == 0.0);
}

TEST_CASE("grand coalition of one matches the solver") {
    const NetworkState s = testing::seeded_state(1, 4);
    const Partition p = grand_coalition(s, {});
    const AllocationResult a = solve_allocation({0}, s, {});
    CHECK(p.allocations[0].shares[0] == doctest::Approx(a.shares[0]));
    CHECK(p.allocations[0].coalition_utility == doctest::Approx(a.coalition_utility));
}

TEST_CASE("nash with nothing to do") {
    const NashReport r = nash_equilibrium(roomy(0.0), {});
    CHECK(r.converged);
    CHECK(r.rounds == 1);
    for (const auto& a : r.partition.allocations) {
        CHECK(a.shares[0] == 0.0);
        CHECK(a.bandwidths[0] == 0.0);
    }
}

TEST_CASE("nash without bandwidth contention") {
    const NetworkState s = testing::seeded_state(3, 8);
    REQUIRE(s.env_bandwidth >= s.uavs[0].bandwidth_max + s.uavs[1].bandwidth_max + s.uavs[2].bandwidth_max);
    const NashReport r = nash_equilibrium(s, {});
    CHECK(r.converged);
    for (std::size_t j = 0; j < 3; ++j) {
        const auto& a = r.partition.allocations[j];
        if (a.shares[0] > 0.0) {
            CHECK(a.bandwidths[0] == doctest::Approx(s.uavs[j].bandwidth_max));
        }
    }
}

TEST_CASE("nash single UAV versus the solver") {
    // Own compute and hover costs pull the share below the solver's.
    const NetworkState s = testing::seeded_state(1, 4);
    const NashReport r = nash_equilibrium(s, {});
    const AllocationResult a = solve_allocation({0}, s, {});
    CHECK(r.partition.allocations[0].shares[0] <= a.shares[0] * (1 + 1e-9));
}

TEST_CASE("nash fixed point admits no better unilateral move") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const NetworkState s = testing::seeded_state(4, seed);
        const WeightConfig w;
        const NashReport r = nash_equilibrium(s, w);
        REQUIRE(r.converged);
        const std::size_t n = s.size();
        for (std::size_t j = 0; j < n; ++j) {
            const auto& own = r.partition.allocations[j];
            CHECK(max_constraint_violation(own, s) <= 1e-9);
            const double u = standalone_utility(s, w, j, own.shares[0], own.bandwidths[0]);
            CHECK(u == doctest::Approx(own.participant_utilities[0]));
            double s_room = s.med.task_size;
            double b_room = s.env_bandwidth;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) {
                    s_room -= r.partition.allocations[k].shares[0];
                    b_room -= r.partition.allocations[k].bandwidths[0];
                }
            }
            const double s_hi = std::max(0.0, std::min(s_room, s.uavs[j].cache_max));
            const double b_hi = std::max(0.0, std::min(b_room, s.uavs[j].bandwidth_max));
            double best = -INFINITY;
            for (int a = 0; a <= 50; ++a) {
                for (int b = 0; b <= 50; ++b) {
                    best = std::max(best, standalone_utility(s, w, j, s_hi * a / 50, b_hi * b / 50));
                }
            }
            CHECK(best <= u + 1e-6 * std::max(1.0, std::abs(u)));
        }
    }
}
