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
#include <aeromec/link_energy.hpp>
#include <aeromec/twin.hpp>

#include <cmath>
#include <string>

namespace aeromec {

namespace {

bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw Error(ErrorKind::invalid_scenario, what);
    }
}

} // namespace

double dbm_to_watts(double dbm) noexcept { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double distance(const Vec3& a, const Vec3& b) noexcept {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void validate(const MedTwin& med) {
    require(finite(med.position), "MED position must be finite");
    require(med.task_size >= 0.0, "task_size must be >= 0");
    require(med.complexity > 0.0, "complexity must be > 0");
    require(med.tx_power >= 0.0, "tx_power must be >= 0");
    require(med.deadline > 0.0 && std::isfinite(med.deadline), "deadline must be > 0");
}

void validate(const UavTwin& uav) {
    require(finite(uav.position), "UAV position must be finite");
    require(uav.bandwidth_max > 0.0, "bandwidth_max must be > 0");
    require(uav.compute_max > 0.0, "compute_max must be > 0");
    require(uav.cache_max >= 0.0, "cache_max must be >= 0");
    require(uav.hover_power >= 0.0, "hover_power must be >= 0");
    require(uav.chip_coeff > 0.0, "chip_coeff must be > 0");
}

void validate(const WeightConfig& weights) {
    require(weights.satisfaction >= 0.0 && weights.comm_penalty >= 0.0
                && weights.compute_penalty >= 0.0 && weights.hover_penalty >= 0.0,
            "utility weights must be >= 0");
    require(weights.share_unit > 0.0, "share_unit must be > 0");
}

NetworkState snapshot(const MedTwin& med, const std::vector<UavTwin>& uavs, double env_bandwidth,
                      int slot, const LinkParams& link) {
    require(!uavs.empty(), "snapshot needs at least one UAV");
    require(env_bandwidth > 0.0, "env_bandwidth must be > 0");
    require(link.noise > 0.0, "noise must be > 0");
    validate(med);

    NetworkState state;
    state.slot_index = slot;
    state.med = med;
    state.uavs = uavs;
    state.env_bandwidth = env_bandwidth;
    state.link = link;
    state.capacities.reserve(uavs.size());
    state.gains.reserve(uavs.size());
    state.spectral_efficiency.reserve(uavs.size());
    for (const auto& uav : uavs) {
        validate(uav);
        const double gain = link::channel_gain_sq(distance(med.position, uav.position), link.path_loss);
        const double efficiency = link::capacity(1.0, gain, med.tx_power, link.noise);
        state.gains.push_back(gain);
        state.spectral_efficiency.push_back(efficiency);
        state.capacities.push_back(uav.bandwidth_max * efficiency);
    }
    return state;
}

} // namespace aeromec
