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
#include <aeromec/warm_start.hpp>

#include "../support/oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

using namespace aeromec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("aeromec_ws_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

StabilizationReport cold_report(const NetworkState& s) {
    CoalitionValuer v(s, {});
    return stabilize(make_partition(propose({}, s).grouping, v), v);
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line)) {
        CHECK_NOTHROW(record_from_json_line(line));
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("warm start names") {
    for (WarmStartKind k : {WarmStartKind::cold, WarmStartKind::replay, WarmStartKind::heuristic}) {
        CHECK(warm_start_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(warm_start_from_string("diffusion"), Error);
}

TEST_CASE("cold start is all singletons") {
    const NetworkState s = testing::seeded_state(5, 1);
    CHECK(propose({}, s).grouping == Grouping{{0}, {1}, {2}, {3}, {4}});
    CHECK_FALSE(propose({}, s).fell_back);
}

TEST_CASE("heuristic leads with a UAV that covers the task alone") {
    std::vector<UavTwin> fleet{testing::uav_at(500, 0, 800, 2.0, 6.0, 0.01),
                               testing::uav_at(0, 0, 100, 5.0, 6.0, 1.5),
                               testing::uav_at(0, 500, 800, 2.0, 6.0, 0.01)};
    const NetworkState s = snapshot(testing::med_at_origin(0.05), fleet, 16e6, 0);
    REQUIRE(share_cap(s, 1, s.uavs[1].bandwidth_max) >= s.med.task_size);
    CHECK(cap_ranking(s).front() == 1);
    const Grouping g = propose({WarmStartKind::heuristic, nullptr}, s).grouping;
    CHECK(g == Grouping{{0}, {1}, {2}});
}

TEST_CASE("heuristic groups until the task is covered") {
    const NetworkState s = testing::seeded_state(6, 3);
    const auto order = cap_ranking(s);
    double covered = 0.0;
    std::size_t lead = 0;
    while (lead < order.size() && covered < s.med.task_size) {
        covered += share_cap(s, order[lead], s.uavs[order[lead]].bandwidth_max);
        ++lead;
    }
    const Grouping g = propose({WarmStartKind::heuristic, nullptr}, s).grouping;
    std::size_t biggest = 0;
    for (const auto& c : g) {
        biggest = std::max(biggest, c.size());
    }
    CHECK(biggest == lead);
    CHECK(g.size() == order.size() - lead + 1);
}

TEST_CASE("features") {
    const NetworkState s = testing::seeded_state(7, 2);
    const auto f = scenario_features(s);
    CHECK(f.size() == 4 + 7);
    for (double x : f) {
        CHECK(std::isfinite(x));
    }
    for (std::size_t i = 5; i < f.size(); ++i) {
        CHECK(f[i] <= f[i - 1]);
    }
}

TEST_CASE("replay of the exact scenario returns its partition") {
    TempDir tmp;
    const NetworkState s = testing::seeded_state(6, 12);
    const StabilizationReport r = cold_report(s);
    REQUIRE(r.converged);
    StrategyDataset ds;
    ds.add(make_record(s, r));
    ds.add(make_record(testing::seeded_state(6, 13), cold_report(testing::seeded_state(6, 13))));
    const Proposal p = propose({WarmStartKind::replay, &ds}, s);
    CHECK_FALSE(p.fell_back);
    CHECK(p.grouping == r.final.coalitions);
}

TEST_CASE("replay without a usable record falls back") {
    const NetworkState s = testing::seeded_state(4, 1);
    StrategyDataset empty;
    const Proposal a = propose({WarmStartKind::replay, &empty}, s);
    CHECK(a.fell_back);
    CHECK(a.grouping == propose({WarmStartKind::heuristic, nullptr}, s).grouping);
    StrategyDataset other;
    other.add(make_record(testing::seeded_state(5, 1), cold_report(testing::seeded_state(5, 1))));
    CHECK(propose({WarmStartKind::replay, &other}, s).fell_back);
    CHECK(propose({WarmStartKind::replay, nullptr}, s).fell_back);
}

TEST_CASE("recording") {
    TempDir tmp;
    const fs::path file = tmp.path / "strategies.ndjson";
    const NetworkState s = testing::seeded_state(3, 4);
    const StabilizationReport r = cold_report(s);
    record(file, s, r);
    CHECK(line_count(file) == 1);
    for (int k = 1; k < 200; ++k) {
        record(file, s, r);
    }
    CHECK(line_count(file) == 200);
    const StrategyDataset ds = StrategyDataset::load(file);
    CHECK(ds.records().size() == 200);
    CHECK(propose({WarmStartKind::replay, &ds}, s).grouping == r.final.coalitions);
    CHECK(ds.records().front().utility == doctest::Approx(served_utility(r.final)));
    CHECK(StrategyDataset::load(tmp.path / "missing.ndjson").empty());
}

TEST_CASE("recording rejects bad input") {
    TempDir tmp;
    const NetworkState s = testing::seeded_state(3, 4);
    StabilizationReport r = cold_report(s);
    r.converged = false;
    try {
        record(tmp.path / "x.ndjson", s, r);
        FAIL("expected invalid_parameter");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_parameter);
    }
    CHECK_FALSE(fs::exists(tmp.path / "x.ndjson"));
    r.converged = true;
    try {
        record(tmp.path / "no_such_dir" / "x.ndjson", s, r);
        FAIL("expected io_failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io_failure);
    }
    try {
        record_from_json_line("{\"features\":[1],\"partition\":");
        FAIL("expected io_failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::io_failure);
    }
}

TEST_CASE("record lines round trip") {
    const StrategyRecord a{{1.0, 0.5, 2.25}, {{0, 2}, {1}}, 12.5};
    const StrategyRecord b = record_from_json_line(record_to_json_line(a));
    CHECK(b.features == a.features);
    CHECK(b.partition == a.partition);
    CHECK(b.utility == a.utility);
}
