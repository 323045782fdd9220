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
 * \file aeromec/allocator.hpp
 *
 * \brief Per-coalition resource allocation.
 *
 * A coalition g serving the slot's MED chooses task shares s_j and bandwidths
 * b_j to maximize
 *
 *   U_g = phi * ln(1 + sum_j s_j / unit) - eps * sum_j p_tr * s_j / C_j(b_j)
 *
 * subject to
 *
 *   0 <= b_j <= b_max_j,  sum_j b_j <= B_max,
 *   0 <= s_j <= cache_j,  sum_j s_j <= s_i,
 *   s_j <= tau / (1 / C_j(b_j) + theta / f_max_j)   (deadline at full clock)
 *   s_j <= tau * C_j(b_j)                           (transmission fits the deadline)
 *
 * Each member then runs at the smallest clock that still meets the deadline.
 */

#ifndef AEROMEC_ALLOCATOR_HPP
#define AEROMEC_ALLOCATOR_HPP

#include <aeromec/link_energy.hpp>
#include <aeromec/twin.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace aeromec {

using Coalition = std::vector<std::size_t>; // sorted UAV indices

struct AllocationResult {
    Coalition members;
    std::vector<double> shares;      // bits
    std::vector<double> bandwidths;  // Hz
    std::vector<double> frequencies; // cycles/s
    double coalition_utility = 0.0;
    std::vector<double> participant_utilities;
    link::EnergyBreakdown energy;
    int iterations = 0; // outer coordinate-ascent passes

    double total_share() const noexcept;
};

/// Solver knobs.
struct SolverOptions {
    double tol = 1e-6;      // relative objective improvement
    int max_iterations = 100;
};

struct GridOracleConfig {
    int points_per_axis = 50;
    int max_members = 3;
};

/// Smallest clock meeting the deadline, capped at f_max. Zero for an empty
/// share. Throws infeasible_deadline when the transmission alone uses up
/// the deadline.
double min_feasible_frequency(double complexity, double share, double deadline,
                              double transmission_time, double compute_max);

/// Largest share UAV j can take at `bandwidth` without breaking its cache,
/// deadline-at-full-clock or transmission-time limits.
double share_cap(const NetworkState& state, std::size_t j, double bandwidth);

/// Objective U_g for given shares and bandwidths (member order of `coalition`).
double coalition_objective(std::span<const double> shares, std::span<const double> bandwidths,
                           const Coalition& coalition, const NetworkState& state,
                           const WeightConfig& weights);

/// Completes an allocation from shares and bandwidths: clocks, energy,
/// coalition and participant utilities.
AllocationResult evaluate_allocation(const Coalition& coalition, std::vector<double> shares,
                                     std::vector<double> bandwidths, const NetworkState& state,
                                     const WeightConfig& weights);

/// Optimal allocation for `coalition` by two-block coordinate ascent
/// (bandwidth block by KKT waterfilling, share block by sorted greedy).
AllocationResult solve_allocation(const Coalition& coalition, const NetworkState& state,
                                  const WeightConfig& weights, const SolverOptions& opts = {});

/// The all-zero allocation for `coalition` (members idle).
AllocationResult idle_allocation(const Coalition& coalition, const NetworkState& state);

/// Utility of the k-th member: a share-proportional slice of U_g minus its
/// weighted computing and hovering energy.
double participant_utility(std::size_t k, const AllocationResult& allocation,
                           const NetworkState& state, const WeightConfig& weights);

/// Largest constraint residual of `allocation`, each divided by
/// max(1, |right-hand side|). Zero when every constraint holds.
double max_constraint_violation(const AllocationResult& allocation, const NetworkState& state);

/// Brute-force maximum of coalition_objective over a uniform grid of shares
/// and bandwidths. Verification only.
double grid_oracle(const Coalition& coalition, const NetworkState& state,
                   const WeightConfig& weights, const GridOracleConfig& cfg);

/// Upper bound on how far the best grid point of `grid_oracle` can sit below
/// the continuous optimum for the given resolution.
double grid_resolution_bound(const Coalition& coalition, const NetworkState& state,
                             const WeightConfig& weights, int points_per_axis);

} // namespace aeromec

#endif // AEROMEC_ALLOCATOR_HPP
