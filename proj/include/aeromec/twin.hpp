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

/**
 * \file aeromec/twin.hpp
 *
 * \brief Digital-twin state of mobile edge devices and UAVs, and the per-slot
 *  network snapshot the scheduler works on.
 *
 * All quantities are SI: meters, bits, Hz, cycles/s, watts, seconds.
 */

#ifndef AEROMEC_TWIN_HPP
#define AEROMEC_TWIN_HPP

#include <cstddef>
#include <vector>

namespace aeromec {

inline constexpr double kBitsPerMbyte = 8.0e6;

inline constexpr double mbyte_to_bits(double mbyte) noexcept { return mbyte * kBitsPerMbyte; }

/// dBm to watts.
double dbm_to_watts(double dbm) noexcept;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b) noexcept;

/// Twin of the mobile edge device that issues the task in the current slot.
struct MedTwin {
    Vec3 position;
    double task_size = 0.0;  // bits
    double complexity = 0.0; // cycles per bit
    double tx_power = 0.0;   // W
    double deadline = 0.0;   // s
};

struct UavTwin {
    Vec3 position;
    double bandwidth_max = 0.0; // Hz
    double compute_max = 0.0;   // cycles/s
    double cache_max = 0.0;     // bits
    double hover_power = 0.0;   // W
    double chip_coeff = 1e-28;  // J s^2 / cycle^3
};

/// Physical-layer constants shared by every link in a scenario.
struct LinkParams {
    double noise = 1e-14;     // W
    double path_loss = 4.0;   // exponent
};

/// Weights of the coalition and participant utilities.
///
/// `share_unit` is the divisor applied to task bits inside the satisfaction
/// logarithm (one Mbyte by default).
struct WeightConfig {
    double satisfaction = 10.0;    // phi
    double comm_penalty = 1.0;     // epsilon
    double compute_penalty = 0.05; // alpha
    double hover_penalty = 0.015;  // beta
    double share_unit = kBitsPerMbyte;
};

void validate(const MedTwin& med);
void validate(const UavTwin& uav);
void validate(const WeightConfig& weights);

/// Snapshot of one slot as seen by the airship's scheduler.
///
/// `capacities[j]` is the MED to UAV j capacity at that UAV's full bandwidth.
/// Gains and spectral efficiencies are kept so that capacities at any other
/// bandwidth come out of the same arithmetic.
struct NetworkState {
    int slot_index = 0;
    MedTwin med;
    std::vector<UavTwin> uavs;
    std::vector<double> capacities;          // bits/s at bandwidth_max
    std::vector<double> gains;               // |g|^2
    std::vector<double> spectral_efficiency; // log2(1 + snr), bits/s/Hz
    double env_bandwidth = 0.0;              // Hz, B_max
    LinkParams link;

    std::size_t size() const noexcept { return uavs.size(); }

    /// Capacity of UAV j's link when it contributes `bandwidth` Hz.
    double capacity_at(std::size_t j, double bandwidth) const noexcept {
        return bandwidth * spectral_efficiency[j];
    }
};

/// Assembles the slot snapshot. Throws Error{invalid_scenario} on an empty
/// fleet or violated twin invariants, Error{degenerate_geometry} when a UAV
/// sits exactly on the MED.
NetworkState snapshot(const MedTwin& med, const std::vector<UavTwin>& uavs,
                      double env_bandwidth, int slot, const LinkParams& link = {});

} // namespace aeromec

#endif // AEROMEC_TWIN_HPP
