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

#include <algorithm>
#include <cmath>

namespace aeromec::link {

double channel_gain_sq(double distance, double gamma) {
    if (!(distance > 0.0)) {
        throw Error(ErrorKind::degenerate_geometry, "MED and UAV are colocated");
    }
    return std::pow(distance, -gamma);
}

double capacity(double bandwidth, double gain_sq, double tx_power, double noise) {
    if (!(noise > 0.0)) {
        throw Error(ErrorKind::invalid_parameter, "noise power must be > 0");
    }
    if (bandwidth < 0.0 || gain_sq < 0.0 || tx_power < 0.0) {
        throw Error(ErrorKind::invalid_parameter, "bandwidth, gain and power must be >= 0");
    }
    return bandwidth * std::log2(1.0 + gain_sq * tx_power / noise);
}

Delays delays(double share, double capacity, double complexity, double frequency) {
    if (share <= 0.0) {
        return {};
    }
    if (!(capacity > 0.0)) {
        throw Error(ErrorKind::unreachable_uav, "positive share over a zero-capacity link");
    }
    if (!(frequency > 0.0)) {
        throw Error(ErrorKind::invalid_parameter, "positive share with zero clock");
    }
    return {share / capacity, complexity * share / frequency};
}

EnergyBreakdown coalition_energy(std::span<const MemberLoad> members, const MedTwin& med,
                                 const LinkParams& link) {
    EnergyBreakdown out;
    for (const auto& m : members) {
        if (m.share <= 0.0) {
            continue;
        }
        const double gain = channel_gain_sq(distance(med.position, m.uav.position), link.path_loss);
        const double rate = capacity(m.bandwidth, gain, med.tx_power, link.noise);
        const Delays d = delays(m.share, rate, med.complexity, m.frequency);
        out.comm += med.tx_power * d.transmission;
        out.compute += m.uav.chip_coeff * m.frequency * m.frequency * m.frequency * d.computation;
        out.completion_time = std::max(out.completion_time, d.transmission + d.computation);
    }
    for (const auto& m : members) {
        out.hover += m.uav.hover_power * out.completion_time;
    }
    out.total = out.comm + out.compute + out.hover;
    return out;
}

} // namespace aeromec::link
