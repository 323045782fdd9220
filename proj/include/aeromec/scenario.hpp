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

#ifndef AEROMEC_SCENARIO_HPP
#define AEROMEC_SCENARIO_HPP

#include <aeromec/baselines.hpp>
#include <aeromec/twin.hpp>
#include <aeromec/warm_start.hpp>

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace aeromec {

/// Closed interval sampled uniformly; lo == hi pins the value.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Simulation setup. Ranges are in the units their names carry and are
/// converted to SI when twins are sampled.
struct ScenarioConfig {
    int n_uavs = 5;
    int n_slots = 100;
    double slot_duration = 60.0; // s
    double area_side = 1000.0;   // m
    double uav_altitude = 800.0; // m
    double med_altitude = 0.0;   // m

    Range task_size_mbyte{5.0, 25.0};
    Range complexity{50.0, 300.0}; // cycles/bit
    Range tx_power_mw{50.0, 100.0};
    Range bandwidth_mhz{1.0, 5.0};
    Range cache_mbyte{1.0, 2.0};
    Range deadline_ms{150.0, 500.0};
    Range chip_coeff_multiplier{1.0, 2.5};
    double chip_coeff_scale = 1e-28; // J s^2 / cycle^3 per unit multiplier
    Range compute_ghz{4.0, 10.0};
    double hover_power = 168.0; // W

    double env_bandwidth_mhz = 16.0;
    double noise_dbm = -110.0;
    double path_loss = 4.0;

    WeightConfig weights;
    std::uint64_t seed = 1;
    std::vector<StrategyId> strategies{StrategyId::coalition_game};
    WarmStartKind warm_start = WarmStartKind::cold;
    std::string dataset_path; // strategy dataset for replay
    double fidelity_delta = 0.0;
};

/// Throws invalid_scenario on ranges outside physical validity.
void validate(const ScenarioConfig& config);

/// Deterministic slot stream: the fleet is drawn once per run, the active
/// MED is redrawn every slot. Fleet and MED draws use separate generators,
/// so changing one range never reshuffles the other stream.
class ScenarioGenerator {
public:
    explicit ScenarioGenerator(const ScenarioConfig& config);

    const std::vector<UavTwin>& fleet() const noexcept { return fleet_; }

    /// Snapshot of the next slot.
    NetworkState next();

private:
    double draw(std::mt19937_64& rng, const Range& range);

    ScenarioConfig config_;
    std::mt19937_64 fleet_rng_;
    std::mt19937_64 med_rng_;
    std::vector<UavTwin> fleet_;
    LinkParams link_;
    int slot_ = 0;
};

std::vector<NetworkState> generate_scenario(const ScenarioConfig& config);

nlohmann::json to_json(const ScenarioConfig& config);
/// Missing fields keep their defaults; unknown fields raise invalid_scenario.
ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Sets one named parameter to a single value (used by sweeps). Range
/// parameters are pinned to [value, value].
void set_parameter(ScenarioConfig& config, const std::string& name, double value);

} // namespace aeromec

#endif // AEROMEC_SCENARIO_HPP
