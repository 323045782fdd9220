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

#include <aeromec/allocator.hpp>
#include <aeromec/error.hpp>
#include <aeromec/scenario.hpp>

#include "../support/oracles.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

using namespace aeromec;

namespace {

// Close UAV on a 1e-4 gain link, p_tr 0.1 W.
NetworkState near_state(std::vector<UavTwin> fleet, double env_mhz = 16.0, double task_mbyte = 10.0,
                        double deadline = 0.3) {
    return snapshot(testing::med_at_origin(task_mbyte, 100.0, 0.1, deadline), fleet, env_mhz * 1e6, 0);
}

// Bandwidth-starved pair with slack caches and deadline: optimum is interior.
NetworkState starved_pair() {
    std::vector<UavTwin> fleet{testing::uav_at(0, 0, 300, 2.0, 8.0, 6.0),
                               testing::uav_at(200, 0, 300, 2.0, 8.0, 6.0)};
    return snapshot(testing::med_at_origin(20.0, 60.0, 0.1, 3.0), fleet, 1.5e6, 0);
}

Coalition all_of(const NetworkState& s) {
    Coalition c(s.size());
    std::iota(c.begin(), c.end(), 0);
    return c;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::io_failure;
}

} // namespace

TEST_CASE("minimum feasible clock") {
    CHECK(min_feasible_frequency(100, 8e6, 0.4, 0.2, 1e10) == doctest::Approx(4e9));
    CHECK(min_feasible_frequency(100, 0.0, 0.4, 0.2, 1e10) == 0.0);
    CHECK(min_feasible_frequency(300, 8e6, 0.3, 0.2, 1e10) == doctest::Approx(1e10));
    CHECK(kind_of([] { min_feasible_frequency(100, 8e6, 0.2, 0.2, 1e10); })
          == ErrorKind::infeasible_deadline);
}

TEST_CASE("clock matches a dense scan") {
    for (double theta : {50.0, 120.0, 300.0}) {
        for (double s : {1e5, 2e6, 8e6}) {
            const double f = min_feasible_frequency(theta, s, 0.5, 0.1, 1e10);
            const double scanned = testing::scan_min_frequency(theta, s, 0.5, 0.1, 1e10, 10000);
            if (scanned > 0.0) {
                CHECK(f <= scanned + 1e-9 * scanned);
                CHECK(f >= scanned - 1e10 / 10000);
            } else {
                CHECK(f == 1e10);
            }
        }
    }
}

TEST_CASE("objective values") {
    const NetworkState s = near_state({testing::uav_at(0, 0, 10)});
    const Coalition c{0};
    WeightConfig w;
    w.satisfaction = 1.0;
    w.comm_penalty = 1.0;
    const double b = 4e6 / s.spectral_efficiency[0];
    const std::vector<double> zero{0.0};
    CHECK(coalition_objective(zero, std::vector<double>{b}, c, s, w) == 0.0);
    CHECK(coalition_objective(std::vector<double>{8e6}, std::vector<double>{b}, c, s, w)
          == doctest::Approx(0.4931471805599453094).epsilon(1e-12));
    w.comm_penalty = 0.0;
    CHECK(coalition_objective(std::vector<double>{8e6 * (std::exp(1.0) - 1.0)}, std::vector<double>{b}, c,
                              s, w)
          == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single UAV takes everything its caps allow") {
    const NetworkState s = testing::seeded_state(1, 11);
    const AllocationResult a = solve_allocation({0}, s, {});
    const double b = std::min(s.uavs[0].bandwidth_max, s.env_bandwidth);
    CHECK(a.bandwidths[0] == doctest::Approx(b));
    CHECK(a.shares[0] == doctest::Approx(std::min(s.med.task_size, share_cap(s, 0, b))));
    CHECK(max_constraint_violation(a, s) <= 1e-9);
}

TEST_CASE("no satisfaction weight means no shares") {
    const NetworkState s = testing::seeded_state(3, 5);
    WeightConfig w;
    w.satisfaction = 0.0;
    const AllocationResult a = solve_allocation(all_of(s), s, w);
    for (double x : a.shares) {
        CHECK(x == 0.0);
    }
    CHECK(a.coalition_utility == 0.0);
    CHECK(grid_oracle(all_of(s), s, w, {50, 3}) == 0.0);
}

TEST_CASE("zero caps give the idle allocation") {
    std::vector<UavTwin> fleet{testing::uav_at(0, 0, 100, 2.0, 6.0, 0.0)};
    const NetworkState s = near_state(fleet);
    const AllocationResult a = solve_allocation({0}, s, {});
    CHECK(a.shares[0] == 0.0);
    CHECK(a.coalition_utility == 0.0);
    CHECK(a.energy.total == 0.0);
    CHECK(grid_oracle({0}, s, {}, {50, 3}) == 0.0);
}

TEST_CASE("solutions are feasible") {
    for (int n = 1; n <= 5; ++n) {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            const NetworkState s = testing::seeded_state(n, seed);
            const AllocationResult a = solve_allocation(all_of(s), s, {});
            CHECK(max_constraint_violation(a, s) <= 1e-9);
            CHECK(a.total_share() <= s.med.task_size * (1 + 1e-12));
        }
    }
    const NetworkState st = starved_pair();
    CHECK(max_constraint_violation(solve_allocation({0, 1}, st, {}), st) <= 1e-9);
}

TEST_CASE("clocks are minimal") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const NetworkState s = testing::seeded_state(4, seed);
        const AllocationResult a = solve_allocation(all_of(s), s, {});
        for (std::size_t k = 0; k < a.members.size(); ++k) {
            if (a.shares[k] <= 0.0) {
                continue;
            }
            const double f = a.frequencies[k] * (1.0 - 1e-6);
            const double rate = s.capacity_at(a.members[k], a.bandwidths[k]);
            CHECK(a.shares[k] / rate + s.med.complexity * a.shares[k] / f > s.med.deadline);
        }
    }
}

TEST_CASE("adding a member never lowers the coalition value") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const NetworkState s = testing::seeded_state(4, seed);
        Coalition c;
        double prev = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j) {
            c.push_back(j);
            const double u = solve_allocation(c, s, {}).coalition_utility;
            CHECK(u >= prev - 1e-6 * std::max(1.0, std::abs(prev)));
            prev = u;
        }
    }
}

TEST_CASE("scaling both objective weights scales the value only") {
    const NetworkState s = starved_pair();
    WeightConfig w;
    WeightConfig w3 = w;
    w3.satisfaction *= 3.0;
    w3.comm_penalty *= 3.0;
    const AllocationResult a = solve_allocation({0, 1}, s, w);
    const AllocationResult b = solve_allocation({0, 1}, s, w3);
    CHECK(b.coalition_utility == doctest::Approx(3.0 * a.coalition_utility).epsilon(1e-6));
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(b.shares[k] == doctest::Approx(a.shares[k]).epsilon(1e-4));
    }
}

TEST_CASE("participant utility") {
    const NetworkState s = near_state({testing::uav_at(0, 0, 400), testing::uav_at(0, 0, 400)});
    WeightConfig w;
    const AllocationResult solo = solve_allocation({0}, s, w);
    REQUIRE(solo.shares[0] > 0.0);
    const double uav_compute = solo.energy.compute;
    const double uav_hover = solo.energy.hover;
    CHECK(solo.participant_utilities[0]
          == doctest::Approx(solo.coalition_utility - w.compute_penalty * uav_compute
                             - w.hover_penalty * uav_hover));

    const double b = s.uavs[0].bandwidth_max;
    const AllocationResult idle_member =
        evaluate_allocation({0, 1}, {solo.shares[0], 0.0}, {b, 0.0}, s, w);
    CHECK(idle_member.participant_utilities[1]
          == doctest::Approx(-w.hover_penalty * s.uavs[1].hover_power * idle_member.energy.completion_time));
    CHECK(idle_member.participant_utilities[1] < 0.0);

    const AllocationResult pair = solve_allocation({0, 1}, s, w);
    CHECK(pair.shares[0] == doctest::Approx(pair.shares[1]));
    CHECK(pair.participant_utilities[0] == doctest::Approx(pair.participant_utilities[1]));

    const AllocationResult none = idle_allocation({0, 1}, s);
    CHECK(participant_utility(0, none, s, w) == 0.0);
}

TEST_CASE("grid oracle limits") {
    const NetworkState s = testing::seeded_state(4, 3);
    CHECK(kind_of([&] { grid_oracle(all_of(s), s, {}, {50, 3}); }) == ErrorKind::oracle_scale_exceeded);
    CHECK(kind_of([&] { grid_oracle({0}, s, {}, {5, 3}); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("solver against the grid oracle") {
    const NetworkState one = testing::seeded_state(1, 21);
    const NetworkState st = starved_pair();
    for (const auto* s : {&one, &st}) {
        const Coalition c = all_of(*s);
        const double u = solve_allocation(c, *s, {}).coalition_utility;
        const double g50 = grid_oracle(c, *s, {}, {50, 3});
        const double g100 = grid_oracle(c, *s, {}, {100, 3});
        CHECK(u >= g50 - grid_resolution_bound(c, *s, {}, 50));
        CHECK(g50 <= u + 1e-9 * std::abs(u));
        CHECK(g100 <= u + 1e-9 * std::abs(u));
        CHECK(g100 >= g50 - 1e-12);
    }
}

TEST_CASE("two-UAV test vectors") {
    std::ifstream in(AEROMEC_TEST_DATA "/oracle_vectors.json");
    REQUIRE(in.good());
    const nlohmann::json doc = nlohmann::json::parse(in);
    const ScenarioConfig base = config_from_json(doc.at("config"));
    int checked = 0;
    for (const auto& v : doc.at("vectors")) {
        if (v.at("n_uavs").get<int>() != 2) {
            continue;
        }
        ScenarioConfig c = base;
        c.n_uavs = 2;
        c.n_slots = 1;
        c.seed = v.at("seed").get<std::uint64_t>();
        const NetworkState s = generate_scenario(c).front();
        const double u = solve_allocation({0, 1}, s, c.weights).coalition_utility;
        const double g = v.at("grid100").get<double>();
        CHECK(std::abs(u - g) <= 1e-3 * std::max(1.0, std::abs(g)));
        CHECK(u == doctest::Approx(v.at("solver_objective").get<double>()).epsilon(1e-9));
        ++checked;
    }
    CHECK(checked > 0);
}
