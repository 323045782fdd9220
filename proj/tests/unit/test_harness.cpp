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
#include <aeromec/harness.hpp>

#include "../support/oracles.hpp"

#include <sstream>
#include <string>

using namespace aeromec;

namespace {

ScenarioConfig small_run() {
    ScenarioConfig c;
    c.n_uavs = 5;
    c.n_slots = 6;
    c.seed = 3;
    c.strategies = {StrategyId::coalition_game, StrategyId::grand_coalition, StrategyId::nash};
    return c;
}

std::string csv_of(const std::vector<SlotMetrics>& rows) {
    std::ostringstream out;
    write_metrics_csv(out, rows);
    return out.str();
}

SlotMetrics with_energy(double e) {
    SlotMetrics m;
    m.sweep_param = "n_uavs";
    m.sweep_value = 5;
    m.total_energy = e;
    return m;
}

} // namespace

TEST_CASE("clock fidelity") {
    CHECK(clock_fidelity(0.0) == 1.0);
    CHECK(clock_fidelity(0.25) == doctest::Approx(0.8));
    CHECK(clock_fidelity(-0.2) == doctest::Approx(0.75));
}

TEST_CASE("fidelity deviation moves the energy the right way") {
    const NetworkState s = testing::seeded_state(5, 6);
    const AllocationResult a = solve_allocation({0, 1, 2, 3, 4}, s, {});
    REQUIRE(a.total_share() > 0.0);
    const FidelityOutcome exact = apply_fidelity(a, 0.0, s);
    CHECK(exact.actual.total == exact.estimated.total);
    CHECK(exact.estimated.total == a.energy.total);
    CHECK_FALSE(exact.deadline_violated);
    const FidelityOutcome fast = apply_fidelity(a, 0.25, s);
    CHECK(fast.actual.total <= fast.estimated.total);
    CHECK(fast.actual.comm == fast.estimated.comm);
    CHECK_FALSE(fast.deadline_violated);
    const FidelityOutcome slow = apply_fidelity(a, -0.2, s);
    CHECK(slow.actual.total >= slow.estimated.total);
    CHECK(slow.deadline_violated);
    CHECK_THROWS_AS(apply_fidelity(a, -1.0, s), Error);
}

TEST_CASE("aggregation") {
    const auto rows = aggregate({with_energy(1.0), with_energy(2.0), with_energy(3.0)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].count == 3);
    CHECK(rows[0].at("total_energy").mean == doctest::Approx(2.0));
    CHECK(rows[0].at("total_energy").stdev == doctest::Approx(1.0));
    CHECK(aggregate({with_energy(4.0)})[0].at("total_energy").stdev == 0.0);
    try {
        aggregate({});
        FAIL("expected empty_aggregate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::empty_aggregate);
    }
    CHECK_THROWS_AS(rows[0].at("speed"), Error);
    CHECK_THROWS_AS(metric_value(with_energy(1.0), "speed"), Error);
}

TEST_CASE("groups keep strategy and sweep point apart") {
    SlotMetrics a = with_energy(1.0);
    SlotMetrics b = with_energy(5.0);
    b.strategy = StrategyId::nash;
    SlotMetrics c = with_energy(7.0);
    c.sweep_value = 10;
    const auto rows = aggregate({a, b, c, a});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].count == 2);
    CHECK(rows[1].strategy == StrategyId::nash);
    CHECK(rows[2].sweep_value == 10);
}

TEST_CASE("csv layout") {
    const std::string text = csv_of({with_energy(1.5)});
    const std::string header = text.substr(0, text.find('\n'));
    CHECK(header.rfind("sweep_param,sweep_value,seed,slot,strategy,warm_start,total_energy", 0) == 0);
    CHECK(header.find("utilization") != std::string::npos);
    CHECK(header.find("iterations") != std::string::npos);
    std::ostringstream sum;
    write_summary_csv(sum, aggregate({with_energy(1.5)}));
    CHECK(sum.str().rfind("sweep_param,sweep_value,strategy,warm_start,count,total_energy_mean,total_energy_sd",
                          0)
          == 0);
}

TEST_CASE("slot metrics are consistent") {
    const ScenarioConfig c = small_run();
    const auto rows = run(c);
    REQUIRE(rows.size() == 18);
    for (const auto& m : rows) {
        CHECK(m.total_energy == doctest::Approx(m.comm_energy + m.compute_energy + m.hover_energy));
        CHECK(m.utilization >= 0.0);
        CHECK(m.utilization <= 1.0 + 1e-9);
        CHECK(m.clock_utilization <= 1.0 + 1e-9);
        CHECK(m.estimated_energy == m.actual_energy);
        CHECK(m.converged);
        if (m.strategy == StrategyId::grand_coalition) {
            CHECK(m.iterations == 1);
            CHECK(m.n_coalitions == 1);
        }
        if (m.strategy == StrategyId::nash) {
            CHECK(m.n_coalitions == 5);
        }
    }
}

TEST_CASE("runs are reproducible") {
    const ScenarioConfig c = small_run();
    CHECK(csv_of(run(c)) == csv_of(run(c)));
    ScenarioConfig d = c;
    d.seed = 4;
    CHECK(csv_of(run(d)) != csv_of(run(c)));
}
