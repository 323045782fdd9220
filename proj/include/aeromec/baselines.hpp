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

#ifndef AEROMEC_BASELINES_HPP
#define AEROMEC_BASELINES_HPP

#include <aeromec/coalition.hpp>

#include <string>
#include <string_view>

namespace aeromec {

enum class StrategyId { coalition_game, grand_coalition, nash };

std::string_view to_string(StrategyId id) noexcept;
StrategyId strategy_from_string(std::string_view name);

/// All UAVs in one coalition with a static allocation: equal task split and
/// equal bandwidth split, each clipped to the member's own limits.
Partition grand_coalition(const NetworkState& state, const WeightConfig& weights);

struct NashOptions {
    double tol = 1e-6;  // relative action change that still counts as "moved"
    int max_rounds = 100;
    int search_points = 64; // coarse scan before the golden-section refinement
};

struct NashReport {
    Partition partition; // singletons; every UAV with a share serves
    int rounds = 0;
    int best_responses = 0;
    bool converged = false;
};

/// Iterated best response: UAVs in index order pick the share and bandwidth
/// that maximize their own utility given what the others already hold.
NashReport nash_equilibrium(const NetworkState& state, const WeightConfig& weights,
                            const NashOptions& opts = {});

/// Own utility of UAV j acting alone with (share, bandwidth); the clock is
/// the minimum feasible one. Returns -inf for an infeasible action.
double standalone_utility(const NetworkState& state, const WeightConfig& weights, std::size_t j,
                          double share, double bandwidth);

} // namespace aeromec

#endif // AEROMEC_BASELINES_HPP
