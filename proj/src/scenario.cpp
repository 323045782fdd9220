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

#include <aeromec/error.hpp>
#include <aeromec/scenario.hpp>

#include <cmath>
#include <fstream>
#include <string>

namespace aeromec {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(ErrorKind::invalid_scenario, what);
    }
}

void require_range(const Range& r, const std::string& name, bool allow_zero = false) {
    require(std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo <= r.hi,
            name + " range must be finite with lo <= hi");
    require(allow_zero ? r.lo >= 0.0 : r.lo > 0.0, name + " range must be positive");
}

nlohmann::json range_json(const Range& r) { return nlohmann::json::array({r.lo, r.hi}); }

Range range_from(const nlohmann::json& j, const std::string& name) {
    if (j.is_number()) {
        const double v = j.get<double>();
        return {v, v};
    }
    require(j.is_array() && j.size() == 2, name + " must be [lo, hi] or a number");
    return {j[0].get<double>(), j[1].get<double>()};
}

Range* range_field(ScenarioConfig& c, const std::string& name) {
    if (name == "task_size_mbyte") return &c.task_size_mbyte;
    if (name == "complexity") return &c.complexity;
    if (name == "tx_power_mw") return &c.tx_power_mw;
    if (name == "bandwidth_mhz") return &c.bandwidth_mhz;
    if (name == "cache_mbyte") return &c.cache_mbyte;
    if (name == "deadline_ms") return &c.deadline_ms;
    if (name == "chip_coeff_multiplier") return &c.chip_coeff_multiplier;
    if (name == "compute_ghz") return &c.compute_ghz;
    return nullptr;
}

double* scalar_field(ScenarioConfig& c, const std::string& name) {
    if (name == "slot_duration") return &c.slot_duration;
    if (name == "area_side") return &c.area_side;
    if (name == "uav_altitude") return &c.uav_altitude;
    if (name == "med_altitude") return &c.med_altitude;
    if (name == "chip_coeff_scale") return &c.chip_coeff_scale;
    if (name == "hover_power") return &c.hover_power;
    if (name == "env_bandwidth_mhz") return &c.env_bandwidth_mhz;
    if (name == "noise_dbm") return &c.noise_dbm;
    if (name == "path_loss") return &c.path_loss;
    if (name == "fidelity_delta") return &c.fidelity_delta;
    return nullptr;
}

double* weight_field(WeightConfig& w, const std::string& name) {
    if (name == "satisfaction") return &w.satisfaction;
    if (name == "comm_penalty") return &w.comm_penalty;
    if (name == "compute_penalty") return &w.compute_penalty;
    if (name == "hover_penalty") return &w.hover_penalty;
    if (name == "share_unit") return &w.share_unit;
    return nullptr;
}

const char* const kRangeNames[] = {"task_size_mbyte", "complexity",   "tx_power_mw",
                                   "bandwidth_mhz",   "cache_mbyte",  "deadline_ms",
                                   "chip_coeff_multiplier", "compute_ghz"};
const char* const kScalarNames[] = {"slot_duration", "area_side",         "uav_altitude",
                                    "med_altitude",  "chip_coeff_scale",  "hover_power",
                                    "env_bandwidth_mhz", "noise_dbm",     "path_loss",
                                    "fidelity_delta"};
const char* const kWeightNames[] = {"satisfaction", "comm_penalty", "compute_penalty",
                                    "hover_penalty", "share_unit"};

std::mt19937_64 seeded(std::uint64_t seed, std::uint32_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
    return std::mt19937_64(seq);
}

} // namespace

void validate(const ScenarioConfig& c) {
    require(c.n_uavs >= 1, "n_uavs must be >= 1");
    require(c.n_slots >= 0, "n_slots must be >= 0");
    require(c.slot_duration > 0.0, "slot_duration must be > 0");
    require(c.area_side >= 0.0 && std::isfinite(c.area_side), "area_side must be >= 0");
    require(std::isfinite(c.uav_altitude) && std::isfinite(c.med_altitude)
                && c.uav_altitude != c.med_altitude,
            "UAV and MED altitudes must differ");
    require_range(c.task_size_mbyte, "task_size_mbyte", true);
    require_range(c.complexity, "complexity");
    require_range(c.tx_power_mw, "tx_power_mw", true);
    require_range(c.bandwidth_mhz, "bandwidth_mhz");
    require_range(c.cache_mbyte, "cache_mbyte", true);
    require_range(c.deadline_ms, "deadline_ms");
    require_range(c.chip_coeff_multiplier, "chip_coeff_multiplier");
    require_range(c.compute_ghz, "compute_ghz");
    require(c.chip_coeff_scale > 0.0, "chip_coeff_scale must be > 0");
    require(c.hover_power >= 0.0, "hover_power must be >= 0");
    require(c.env_bandwidth_mhz > 0.0, "env_bandwidth_mhz must be > 0");
    require(std::isfinite(c.noise_dbm), "noise_dbm must be finite");
    require(c.path_loss > 0.0, "path_loss must be > 0");
    require(c.fidelity_delta > -1.0, "fidelity_delta must be > -1");
    require(!c.strategies.empty(), "at least one strategy is required");
    aeromec::validate(c.weights);
}

ScenarioGenerator::ScenarioGenerator(const ScenarioConfig& config)
    : config_(config),
      fleet_rng_(seeded(config.seed, 1)),
      med_rng_(seeded(config.seed, 2)) {
    validate(config_);
    link_.noise = dbm_to_watts(config_.noise_dbm);
    link_.path_loss = config_.path_loss;
    fleet_.reserve(static_cast<std::size_t>(config_.n_uavs));
    for (int j = 0; j < config_.n_uavs; ++j) {
        UavTwin u;
        u.position = {draw(fleet_rng_, {0.0, config_.area_side}),
                      draw(fleet_rng_, {0.0, config_.area_side}), config_.uav_altitude};
        u.bandwidth_max = draw(fleet_rng_, config_.bandwidth_mhz) * 1e6;
        u.compute_max = draw(fleet_rng_, config_.compute_ghz) * 1e9;
        u.cache_max = mbyte_to_bits(draw(fleet_rng_, config_.cache_mbyte));
        u.hover_power = config_.hover_power;
        u.chip_coeff = config_.chip_coeff_scale * draw(fleet_rng_, config_.chip_coeff_multiplier);
        fleet_.push_back(u);
    }
}

double ScenarioGenerator::draw(std::mt19937_64& rng, const Range& range) {
    // 53 random mantissa bits; identical on every standard library.
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return range.lo + (range.hi - range.lo) * unit;
}

NetworkState ScenarioGenerator::next() {
    MedTwin med;
    med.position = {draw(med_rng_, {0.0, config_.area_side}), draw(med_rng_, {0.0, config_.area_side}),
                    config_.med_altitude};
    med.task_size = mbyte_to_bits(draw(med_rng_, config_.task_size_mbyte));
    med.complexity = draw(med_rng_, config_.complexity);
    med.tx_power = draw(med_rng_, config_.tx_power_mw) * 1e-3;
    med.deadline = draw(med_rng_, config_.deadline_ms) * 1e-3;
    return snapshot(med, fleet_, config_.env_bandwidth_mhz * 1e6, slot_++, link_);
}

std::vector<NetworkState> generate_scenario(const ScenarioConfig& config) {
    ScenarioGenerator gen(config);
    std::vector<NetworkState> out;
    out.reserve(static_cast<std::size_t>(config.n_slots));
    for (int t = 0; t < config.n_slots; ++t) {
        out.push_back(gen.next());
    }
    return out;
}

nlohmann::json to_json(const ScenarioConfig& c) {
    nlohmann::json j;
    j["n_uavs"] = c.n_uavs;
    j["n_slots"] = c.n_slots;
    ScenarioConfig copy = c;
    for (const char* name : kScalarNames) {
        j[name] = *scalar_field(copy, name);
    }
    for (const char* name : kRangeNames) {
        j[name] = range_json(*range_field(copy, name));
    }
    nlohmann::json w;
    for (const char* name : kWeightNames) {
        w[name] = *weight_field(copy.weights, name);
    }
    j["weights"] = w;
    j["seed"] = c.seed;
    nlohmann::json strategies = nlohmann::json::array();
    for (StrategyId s : c.strategies) {
        strategies.push_back(std::string(to_string(s)));
    }
    j["strategies"] = strategies;
    j["warm_start"] = std::string(to_string(c.warm_start));
    j["dataset_path"] = c.dataset_path;
    return j;
}

ScenarioConfig config_from_json(const nlohmann::json& j) {
    require(j.is_object(), "config must be a JSON object");
    ScenarioConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "n_uavs") {
                c.n_uavs = value.get<int>();
            } else if (key == "n_slots") {
                c.n_slots = value.get<int>();
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "strategies" || key == "strategy") {
                c.strategies.clear();
                if (value.is_string()) {
                    c.strategies.push_back(strategy_from_string(value.get<std::string>()));
                } else {
                    for (const auto& s : value) {
                        c.strategies.push_back(strategy_from_string(s.get<std::string>()));
                    }
                }
            } else if (key == "warm_start") {
                c.warm_start = warm_start_from_string(value.get<std::string>());
            } else if (key == "dataset_path") {
                c.dataset_path = value.get<std::string>();
            } else if (key == "weights") {
                require(value.is_object(), "weights must be an object");
                for (const auto& [wk, wv] : value.items()) {
                    double* field = weight_field(c.weights, wk);
                    require(field != nullptr, "unknown weight '" + wk + "'");
                    *field = wv.get<double>();
                }
            } else if (Range* r = range_field(c, key)) {
                *r = range_from(value, key);
            } else if (double* s = scalar_field(c, key)) {
                *s = value.get<double>();
            } else {
                throw Error(ErrorKind::invalid_scenario, "unknown config field '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::invalid_scenario, std::string("bad config value: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::invalid_scenario) {
            throw;
        }
        throw Error(ErrorKind::invalid_scenario, e.what());
    }
    validate(c);
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::io_failure, "cannot read config " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::invalid_scenario, std::string("config is not JSON: ") + e.what());
    }
    return config_from_json(j);
}

void set_parameter(ScenarioConfig& config, const std::string& name, double value) {
    if (name == "n_uavs") {
        config.n_uavs = static_cast<int>(std::lround(value));
    } else if (name == "n_slots") {
        config.n_slots = static_cast<int>(std::lround(value));
    } else if (Range* r = range_field(config, name)) {
        *r = {value, value};
    } else if (double* s = scalar_field(config, name)) {
        *s = value;
    } else if (double* w = weight_field(config.weights, name)) {
        *w = value;
    } else {
        throw Error(ErrorKind::invalid_parameter, "unknown sweep parameter '" + name + "'");
    }
    validate(config);
}

} // namespace aeromec
