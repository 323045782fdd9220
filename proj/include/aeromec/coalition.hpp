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
 * \file aeromec/coalition.hpp
 *
 * \brief Transferable-utility coalition formation among UAVs by merge and
 *  split.
 *
 * A partition groups the fleet into disjoint coalitions. Each coalition has
 * the allocation it would run if it served the slot's MED; only the coalition
 * with the highest coalition utility actually serves, the others stay in
 * energy-saving mode and their members realize zero utility.
 *
 * Merges and splits are applied when the affected UAVs are Pareto better off
 * in the resulting partition.
 */

#ifndef AEROMEC_COALITION_HPP
#define AEROMEC_COALITION_HPP

#include <aeromec/allocator.hpp>
#include <aeromec/twin.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aeromec {

/// Memoized allocations for one (state, weights) pair. Allocations are a pure
/// function of the member set, so caching never changes results.
class CoalitionValuer {
public:
    CoalitionValuer(const NetworkState& state, const WeightConfig& weights,
                    SolverOptions opts = {});

    const AllocationResult& allocation(const Coalition& members);

    const NetworkState& state() const noexcept { return *state_; }
    const WeightConfig& weights() const noexcept { return weights_; }
    std::size_t solver_calls() const noexcept { return solver_calls_; }

private:
    const NetworkState* state_;
    WeightConfig weights_;
    SolverOptions opts_;
    std::map<Coalition, AllocationResult> cache_;
    std::size_t solver_calls_ = 0;
};

struct Partition {
    std::size_t n_uavs = 0;
    std::vector<Coalition> coalitions;        // sorted members, ordered by first member
    std::vector<AllocationResult> allocations; // planned allocation per coalition
    std::vector<bool> serving;                 // which coalitions serve the MED
    int generation = 0;

    /// Realized utility of every UAV, indexed by UAV.
    std::vector<double> utilities(const NetworkState& state, const WeightConfig& weights) const;

    /// Index of the coalition holding UAV j.
    std::size_t coalition_of(std::size_t j) const;
};

/// Groups only, as used by warm-start providers and serialization.
using Grouping = std::vector<Coalition>;

/// Sorts members and coalitions into canonical order. Throws
/// invalid_scenario unless `groups` is a partition of {0..n-1} into
/// non-empty sets.
Grouping canonical_grouping(Grouping groups, std::size_t n_uavs);

/// Builds a game partition: plans every coalition and marks the one with the
/// highest positive coalition utility as serving (lowest index on ties).
Partition make_partition(const Grouping& groups, CoalitionValuer& valuer, int generation = 0);

/// Utilities of a UAV subset within some partition.
struct FragmentUtilities {
    Coalition members;
    std::vector<double> utilities;
};

FragmentUtilities fragment_utilities(const Partition& partition, const Coalition& members,
                                     const NetworkState& state, const WeightConfig& weights);

/// True iff nobody in `a` is worse off than in `b` and someone is strictly
/// better off. Throws invalid_comparison when the fragments cover different
/// UAVs.
bool pareto_dominates(const FragmentUtilities& a, const FragmentUtilities& b);

std::optional<Partition> try_merge(const Partition& partition, std::size_t k1, std::size_t k2,
                                   CoalitionValuer& valuer);

struct Bipartition {
    Coalition first;
    Coalition second;
};

std::optional<Partition> try_split(const Partition& partition, std::size_t k,
                                   const Bipartition& parts, CoalitionValuer& valuer);

/// Bipartitions tried for a coalition: every 2-way split up to
/// `enum_cap` members, single-member peel-offs above it.
std::vector<Bipartition> candidate_splits(const Coalition& members, std::size_t enum_cap);

struct StabilizeLimits {
    int max_rounds = 10000;       // scans, each ending at the first applied rule
    std::size_t split_enum_cap = 6;
};

enum class RuleKind { merge, split };

struct RuleApplication {
    RuleKind kind;
    FragmentUtilities before;
    FragmentUtilities after;
};

struct StabilizationReport {
    Partition final;
    int iterations = 0; // merge and split evaluations
    int merges_applied = 0;
    int splits_applied = 0;
    bool converged = false;
    std::vector<RuleApplication> log;
};

/// Runs merge-and-split to a partition with no Pareto-improving pairwise
/// merge or candidate split. Scans coalition pairs in index order, then
/// splits, restarting after every applied rule.
StabilizationReport stabilize(const Partition& initial, CoalitionValuer& valuer,
                              const StabilizeLimits& limits = {});

/// Total planned coalition utility of the serving coalitions.
double served_utility(const Partition& partition);

std::string grouping_to_json(const Grouping& groups);
Grouping grouping_from_json(const std::string& text, std::size_t n_uavs);

} // namespace aeromec

#endif // AEROMEC_COALITION_HPP
