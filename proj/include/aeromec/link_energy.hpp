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

#ifndef AEROMEC_LINK_ENERGY_HPP
#define AEROMEC_LINK_ENERGY_HPP

#include <aeromec/twin.hpp>

#include <span>

namespace aeromec::link {

/// Power gain |g|^2 = d^-gamma. Throws degenerate_geometry for d <= 0.
double channel_gain_sq(double distance, double gamma);

/// Shannon capacity b * log2(1 + gain_sq * p_tr / noise), bits/s.
double capacity(double bandwidth, double gain_sq, double tx_power, double noise);

struct Delays {
    double transmission = 0.0; // s
    double computation = 0.0;  // s
};

/// Transmission and computing latency of one share. Both are zero for an
/// empty share; a positive share over a zero-capacity link is unreachable_uav.
Delays delays(double share, double capacity, double complexity, double frequency);

struct EnergyBreakdown {
    double comm = 0.0;            // J, MED transmission energy
    double compute = 0.0;         // J
    double hover = 0.0;           // J
    double total = 0.0;           // J
    double completion_time = 0.0; // s, coalition makespan
};

/// One coalition member's contribution.
struct MemberLoad {
    UavTwin uav;
    double share = 0.0;     // bits
    double bandwidth = 0.0; // Hz
    double frequency = 0.0; // cycles/s
};

/// Communication, computing and hovering energy of a coalition serving `med`.
///
/// Every listed member hovers for the coalition completion time, including
/// members that carry no share.
EnergyBreakdown coalition_energy(std::span<const MemberLoad> members, const MedTwin& med,
                                 const LinkParams& link);

} // namespace aeromec::link

#endif // AEROMEC_LINK_ENERGY_HPP
