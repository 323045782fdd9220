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

#include <aeromec/allocator.hpp>
#include <aeromec/error.hpp>
#include <aeromec/harness.hpp>
#include <aeromec/scenario.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace aeromec;

namespace {

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> strategies;
    std::optional<std::string> warm_start;
    std::optional<std::string> dataset;
    std::string out = ".";
    std::optional<int> slots;
    std::optional<double> fidelity_delta;
    std::optional<int> n_uavs;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config, "scenario config (JSON)");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--strategy", f.strategies, "coalition_game, grand_coalition, nash or all")
        ->delimiter(',');
    cmd->add_option("--warm-start", f.warm_start, "cold, replay or heuristic");
    cmd->add_option("--dataset", f.dataset, "strategy dataset for replay (NDJSON)");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--slots", f.slots, "number of slots");
    cmd->add_option("--fidelity-delta", f.fidelity_delta, "relative clock error of the twin");
    cmd->add_option("--uavs", f.n_uavs, "fleet size");
}

ScenarioConfig resolve(const CommonFlags& f) {
    ScenarioConfig c = f.config.empty() ? ScenarioConfig{} : load_config(f.config);
    if (f.seed) c.seed = *f.seed;
    if (f.slots) c.n_slots = *f.slots;
    if (f.fidelity_delta) c.fidelity_delta = *f.fidelity_delta;
    if (f.n_uavs) c.n_uavs = *f.n_uavs;
    if (f.warm_start) c.warm_start = warm_start_from_string(*f.warm_start);
    if (f.dataset) c.dataset_path = *f.dataset;
    if (!f.strategies.empty()) {
        c.strategies.clear();
        for (const auto& s : f.strategies) {
            if (s == "all") {
                c.strategies = {StrategyId::coalition_game, StrategyId::nash, StrategyId::grand_coalition};
                break;
            }
            c.strategies.push_back(strategy_from_string(s));
        }
    }
    validate(c);
    return c;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::io_failure, "cannot write " + path.string());
    }
    return out;
}

nlohmann::json versions() {
    return {{"aeromec", "0.1.0"},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "."
                                  + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "."
                                  + std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
            {"cli11", CLI11_VERSION},
            {"compiler", __VERSION__}};
}

void write_outputs(const fs::path& dir, const std::vector<SlotMetrics>& rows, nlohmann::json meta) {
    fs::create_directories(dir);
    {
        auto out = open_out(dir / "metrics.csv");
        write_metrics_csv(out, rows);
    }
    {
        auto out = open_out(dir / "summary.csv");
        write_summary_csv(out, aggregate(rows));
    }
    meta["versions"] = versions();
    auto out = open_out(dir / "run_meta.json");
    out << meta.dump(2) << '\n';
}

int cmd_run(const CommonFlags& f) {
    const ScenarioConfig c = resolve(f);
    const auto rows = run(c);
    write_outputs(f.out, rows, {{"command", "run"}, {"config", to_json(c)}});
    std::cout << "wrote " << rows.size() << " rows to " << f.out << '\n';
    return 0;
}

int cmd_sweep(const CommonFlags& f, const std::string& param, const std::vector<double>& values,
              int seeds) {
    const ScenarioConfig base = resolve(f);
    std::optional<StrategyDataset> dataset;
    if (base.warm_start == WarmStartKind::replay && !base.dataset_path.empty()) {
        dataset = StrategyDataset::load(base.dataset_path);
    }
    std::vector<SlotMetrics> rows;
    for (double v : values) {
        for (int k = 0; k < seeds; ++k) {
            ScenarioConfig c = base;
            set_parameter(c, param, v);
            c.seed = base.seed + static_cast<std::uint64_t>(k);
            for (auto& r : run(c, dataset ? &*dataset : nullptr)) {
                r.sweep_param = param;
                r.sweep_value = v;
                rows.push_back(std::move(r));
            }
        }
    }
    write_outputs(f.out, rows,
                  {{"command", "sweep"}, {"parameter", param}, {"values", values},
                   {"seeds", seeds}, {"config", to_json(base)}});
    std::cout << "wrote " << rows.size() << " rows to " << f.out << '\n';
    return 0;
}

int cmd_oracle(const CommonFlags& f, int count) {
    ScenarioConfig base = resolve(f);
    nlohmann::json vectors = nlohmann::json::array();
    for (int i = 0; i < count; ++i) {
        ScenarioConfig c = base;
        c.n_uavs = 1 + i % 3;
        c.n_slots = 1;
        c.seed = base.seed + static_cast<std::uint64_t>(i);
        const NetworkState state = generate_scenario(c).front();
        Coalition all;
        for (std::size_t j = 0; j < state.size(); ++j) {
            all.push_back(j);
        }
        const AllocationResult a = solve_allocation(all, state, c.weights);
        vectors.push_back({{"seed", c.seed},
                           {"n_uavs", c.n_uavs},
                           {"solver_objective", a.coalition_utility},
                           {"shares", a.shares},
                           {"bandwidths", a.bandwidths},
                           {"grid50", grid_oracle(all, state, c.weights, {50, 3})},
                           {"grid100", grid_oracle(all, state, c.weights, {100, 3})},
                           {"bound50", grid_resolution_bound(all, state, c.weights, 50)}});
    }
    fs::create_directories(f.out);
    auto out = open_out(fs::path(f.out) / "oracle_vectors.json");
    out << nlohmann::json{{"config", to_json(base)}, {"vectors", vectors}, {"versions", versions()}}.dump(2)
        << '\n';
    std::cout << "wrote " << count << " vectors to " << f.out << '\n';
    return 0;
}

int cmd_record(const CommonFlags& f, const std::string& dataset) {
    const ScenarioConfig c = resolve(f);
    const fs::path path = dataset.empty() ? fs::path(f.out) / "strategies.ndjson" : fs::path(dataset);
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    const std::size_t n = record_dataset(c, path);
    std::cout << "recorded " << n << " strategies to " << path.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"aeromec: coalition-based task offloading simulator for aerial edge computing"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "simulate one configuration");
    add_common(run_cmd, run_flags);

    CommonFlags sweep_flags;
    std::string param;
    std::vector<double> values;
    int seeds = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "vary one parameter over a list of values");
    add_common(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--param", param, "parameter name")->required();
    sweep_cmd->add_option("--values", values, "comma-separated values")->delimiter(',')->required();
    sweep_cmd->add_option("--seeds", seeds, "seeds per value, counting up from --seed")
        ->check(CLI::PositiveNumber);

    CommonFlags oracle_flags;
    int count = 200;
    auto* oracle_cmd = app.add_subcommand("oracle", "regenerate solver test vectors");
    add_common(oracle_cmd, oracle_flags);
    oracle_cmd->add_option("--count", count, "number of instances")->check(CLI::PositiveNumber);

    CommonFlags record_flags;
    std::string dataset_out;
    auto* record_cmd = app.add_subcommand("record", "build a strategy dataset");
    add_common(record_cmd, record_flags);
    record_cmd->add_option("--file", dataset_out, "dataset file (default <out>/strategies.ndjson)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) return cmd_run(run_flags);
        if (*sweep_cmd) return cmd_sweep(sweep_flags, param, values, seeds);
        if (*oracle_cmd) return cmd_oracle(oracle_flags, count);
        if (*record_cmd) return cmd_record(record_flags, dataset_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
