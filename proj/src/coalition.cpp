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

#include <aeromec/coalition.hpp>
#include <aeromec/error.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

namespace aeromec {

namespace {

// Utilities closer than this are treated as equal by the Pareto order, so
// solver round-off never triggers a rule.
constexpr double kUtilityTol = 1e-9;

bool strictly_above(double a, double b) {
    return a > b + kUtilityTol * std::max(1.0, std::abs(b));
}

Coalition merged(const Coalition& a, const Coalition& b) {
    Coalition out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

CoalitionValuer::CoalitionValuer(const NetworkState& state, const WeightConfig& weights,
                                 SolverOptions opts)
    : state_(&state), weights_(weights), opts_(opts) {}

const AllocationResult& CoalitionValuer::allocation(const Coalition& members) {
    auto it = cache_.find(members);
    if (it == cache_.end()) {
        ++solver_calls_;
        it = cache_.emplace(members, solve_allocation(members, *state_, weights_, opts_)).first;
    }
    return it->second;
}

std::vector<double> Partition::utilities(const NetworkState& state, const WeightConfig& weights) const {
    (void)state;
    (void)weights;
    std::vector<double> u(n_uavs, 0.0);
    for (std::size_t k = 0; k < coalitions.size(); ++k) {
        if (!serving[k]) {
            continue;
        }
        for (std::size_t i = 0; i < coalitions[k].size(); ++i) {
            u[coalitions[k][i]] = allocations[k].participant_utilities[i];
        }
    }
    return u;
}

std::size_t Partition::coalition_of(std::size_t j) const {
    for (std::size_t k = 0; k < coalitions.size(); ++k) {
        if (std::binary_search(coalitions[k].begin(), coalitions[k].end(), j)) {
            return k;
        }
    }
    throw Error(ErrorKind::invalid_parameter, "UAV not in partition");
}

Grouping canonical_grouping(Grouping groups, std::size_t n_uavs) {
    std::vector<int> seen(n_uavs, 0);
    for (auto& g : groups) {
        if (g.empty()) {
            throw Error(ErrorKind::invalid_scenario, "empty coalition in partition");
        }
        std::sort(g.begin(), g.end());
        for (std::size_t j : g) {
            if (j >= n_uavs || seen[j]++ != 0) {
                throw Error(ErrorKind::invalid_scenario, "partition is not a set partition of the fleet");
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), 0) != 0) {
        throw Error(ErrorKind::invalid_scenario, "partition does not cover the fleet");
    }
    std::sort(groups.begin(), groups.end(),
              [](const Coalition& a, const Coalition& b) { return a.front() < b.front(); });
    return groups;
}

Partition make_partition(const Grouping& groups, CoalitionValuer& valuer, int generation) {
    const NetworkState& state = valuer.state();
    Partition p;
    p.n_uavs = state.size();
    p.coalitions = canonical_grouping(groups, p.n_uavs);
    p.generation = generation;
    p.allocations.reserve(p.coalitions.size());
    for (const auto& g : p.coalitions) {
        p.allocations.push_back(valuer.allocation(g));
    }
    p.serving.assign(p.coalitions.size(), false);
    std::size_t best = p.coalitions.size();
    double best_value = 0.0;
    for (std::size_t k = 0; k < p.coalitions.size(); ++k) {
        const double v = p.allocations[k].coalition_utility;
        if (v > best_value) {
            best = k;
            best_value = v;
        }
    }
    for (std::size_t k = 0; k < p.coalitions.size(); ++k) {
        if (k != best) {
            p.allocations[k] = idle_allocation(p.coalitions[k], state);
        }
    }
    if (best < p.coalitions.size()) {
        p.serving[best] = true;
    }
    return p;
}

FragmentUtilities fragment_utilities(const Partition& partition, const Coalition& members,
                                     const NetworkState& state, const WeightConfig& weights) {
    const std::vector<double> all = partition.utilities(state, weights);
    FragmentUtilities out;
    out.members = members;
    std::sort(out.members.begin(), out.members.end());
    for (std::size_t j : out.members) {
        if (j >= all.size()) {
            throw Error(ErrorKind::invalid_comparison, "fragment member outside the partition");
        }
        out.utilities.push_back(all[j]);
    }
    return out;
}

bool pareto_dominates(const FragmentUtilities& a, const FragmentUtilities& b) {
    if (a.members != b.members || a.utilities.size() != a.members.size()
        || b.utilities.size() != b.members.size()) {
        throw Error(ErrorKind::invalid_comparison, "fragments cover different UAVs");
    }
    bool better = false;
    for (std::size_t i = 0; i < a.members.size(); ++i) {
        if (strictly_above(b.utilities[i], a.utilities[i])) {
            return false;
        }
        better = better || strictly_above(a.utilities[i], b.utilities[i]);
    }
    return better;
}

std::optional<Partition> try_merge(const Partition& partition, std::size_t k1, std::size_t k2,
                                   CoalitionValuer& valuer) {
    const std::size_t m = partition.coalitions.size();
    if (k1 == k2 || k1 >= m || k2 >= m) {
        throw Error(ErrorKind::invalid_comparison, "merge needs two distinct coalitions");
    }
    const Coalition joined = merged(partition.coalitions[k1], partition.coalitions[k2]);
    Grouping groups;
    groups.reserve(m - 1);
    for (std::size_t k = 0; k < m; ++k) {
        if (k != k1 && k != k2) {
            groups.push_back(partition.coalitions[k]);
        }
    }
    groups.push_back(joined);
    Partition next = make_partition(groups, valuer, partition.generation + 1);
    const auto& state = valuer.state();
    const auto& weights = valuer.weights();
    if (pareto_dominates(fragment_utilities(next, joined, state, weights),
                         fragment_utilities(partition, joined, state, weights))) {
        return next;
    }
    return std::nullopt;
}

std::optional<Partition> try_split(const Partition& partition, std::size_t k,
                                   const Bipartition& parts, CoalitionValuer& valuer) {
    if (k >= partition.coalitions.size()) {
        throw Error(ErrorKind::invalid_comparison, "split of a missing coalition");
    }
    const Coalition& whole = partition.coalitions[k];
    Coalition first = parts.first;
    Coalition second = parts.second;
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    if (first.empty() || second.empty() || merged(first, second) != whole) {
        throw Error(ErrorKind::invalid_comparison, "not a bipartition of the coalition");
    }
    Grouping groups;
    for (std::size_t i = 0; i < partition.coalitions.size(); ++i) {
        if (i != k) {
            groups.push_back(partition.coalitions[i]);
        }
    }
    groups.push_back(first);
    groups.push_back(second);
    Partition next = make_partition(groups, valuer, partition.generation + 1);
    const auto& state = valuer.state();
    const auto& weights = valuer.weights();
    if (pareto_dominates(fragment_utilities(next, whole, state, weights),
                         fragment_utilities(partition, whole, state, weights))) {
        return next;
    }
    return std::nullopt;
}

std::vector<Bipartition> candidate_splits(const Coalition& members, std::size_t enum_cap) {
    std::vector<Bipartition> out;
    const std::size_t n = members.size();
    if (n < 2) {
        return out;
    }
    if (n <= enum_cap) {
        // members[0] always lands in `first`, so each bipartition shows up once.
        const std::size_t rest = n - 1;
        const std::size_t full = (std::size_t{1} << rest) - 1;
        for (std::size_t mask = 0; mask < full; ++mask) {
            Bipartition b;
            b.first.push_back(members[0]);
            for (std::size_t i = 0; i < rest; ++i) {
                ((mask >> i) & 1U ? b.first : b.second).push_back(members[i + 1]);
            }
            out.push_back(std::move(b));
        }
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        Bipartition b;
        for (std::size_t k = 0; k < n; ++k) {
            (k == i ? b.second : b.first).push_back(members[k]);
        }
        out.push_back(std::move(b));
    }
    return out;
}

StabilizationReport stabilize(const Partition& initial, CoalitionValuer& valuer,
                              const StabilizeLimits& limits) {
    StabilizationReport report;
    report.final = initial;
    const auto& state = valuer.state();
    const auto& weights = valuer.weights();
    Partition& p = report.final;

    auto note = [&](RuleKind kind, const Coalition& members, const Partition& next) {
        report.log.push_back({kind, fragment_utilities(p, members, state, weights),
                              fragment_utilities(next, members, state, weights)});
    };

    for (int scan = 0; scan < limits.max_rounds; ++scan) {
        bool applied = false;
        const std::size_t m = p.coalitions.size();
        for (std::size_t k1 = 0; k1 < m && !applied; ++k1) {
            for (std::size_t k2 = k1 + 1; k2 < m && !applied; ++k2) {
                ++report.iterations;
                if (auto next = try_merge(p, k1, k2, valuer)) {
                    note(RuleKind::merge, merged(p.coalitions[k1], p.coalitions[k2]), *next);
                    p = std::move(*next);
                    ++report.merges_applied;
                    applied = true;
                }
            }
        }
        for (std::size_t k = 0; k < m && !applied; ++k) {
            const Coalition whole = p.coalitions[k];
            for (const auto& parts : candidate_splits(whole, limits.split_enum_cap)) {
                ++report.iterations;
                if (auto next = try_split(p, k, parts, valuer)) {
                    note(RuleKind::split, whole, *next);
                    p = std::move(*next);
                    ++report.splits_applied;
                    applied = true;
                    break;
                }
            }
        }
        if (!applied) {
            report.converged = true;
            break;
        }
    }
    return report;
}

double served_utility(const Partition& partition) {
    double total = 0.0;
    for (std::size_t k = 0; k < partition.coalitions.size(); ++k) {
        if (partition.serving[k]) {
            total += partition.allocations[k].coalition_utility;
        }
    }
    return total;
}

std::string grouping_to_json(const Grouping& groups) {
    return nlohmann::json(groups).dump();
}

Grouping grouping_from_json(const std::string& text, std::size_t n_uavs) {
    Grouping groups;
    try {
        groups = nlohmann::json::parse(text).get<Grouping>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::invalid_scenario, std::string("bad partition JSON: ") + e.what());
    }
    return canonical_grouping(std::move(groups), n_uavs);
}

} // namespace aeromec
