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

#include <aeromec/allocator.hpp>
#include <aeromec/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace aeromec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBisectionSteps = 200;
constexpr std::size_t kExhaustiveSupport = 4; // members; larger coalitions drop greedily

/// Bandwidth UAV j needs to carry `share` within the deadline at full clock.
double bandwidth_floor(const NetworkState& state, std::size_t j, double share) {
    if (share <= 0.0) {
        return 0.0;
    }
    const double slack = state.med.deadline / share
                         - state.med.complexity / state.uavs[j].compute_max;
    const double efficiency = state.spectral_efficiency[j];
    if (slack <= 0.0 || efficiency <= 0.0) {
        return kInf;
    }
    return 1.0 / (efficiency * slack);
}

/// Finds lambda with sum_j clamp(demand_j(lambda), lo_j, hi_j) == budget for
/// demands nonincreasing in lambda, searching on log(lambda). Returns the
/// clamped allocation on the side that stays within budget.
template <class Demand>
std::vector<double> waterfill(const std::vector<double>& lo, const std::vector<double>& hi,
                              double budget, Demand demand) {
    const std::size_t n = lo.size();
    auto fill = [&](double lambda) {
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = std::clamp(demand(i, lambda), lo[i], hi[i]);
        }
        return b;
    };
    auto total = [](const std::vector<double>& b) { return std::accumulate(b.begin(), b.end(), 0.0); };

    double log_lo = -200.0; // sum >= budget here
    double log_hi = 200.0;  // sum <= budget here
    for (int it = 0; it < kBisectionSteps && log_hi - log_lo > 1e-13; ++it) {
        const double mid = 0.5 * (log_lo + log_hi);
        if (total(fill(std::exp(mid))) > budget) {
            log_lo = mid;
        } else {
            log_hi = mid;
        }
    }
    std::vector<double> b = fill(std::exp(log_hi));
    // Hand out whatever the bisection left on the table, in index order.
    double slack = budget - total(b);
    for (std::size_t i = 0; i < n && slack > 0.0; ++i) {
        const double add = std::min(slack, hi[i] - b[i]);
        if (add > 0.0) {
            b[i] += add;
            slack -= add;
        }
    }
    return b;
}

struct Problem {
    const Coalition& members;
    const NetworkState& state;
    const WeightConfig& weights;

    std::size_t size() const { return members.size(); }
    double b_max(std::size_t k) const { return state.uavs[members[k]].bandwidth_max; }

    /// Per-bit transmission cost at bandwidth b.
    double unit_cost(std::size_t k, double b) const {
        const double rate = state.capacity_at(members[k], b);
        if (rate <= 0.0) {
            return kInf;
        }
        return weights.comm_penalty * state.med.tx_power / rate;
    }

    double objective(const std::vector<double>& s, const std::vector<double>& b) const {
        return coalition_objective(s, b, members, state, weights);
    }

    /// Exact share block: maximize phi ln(1 + S/unit) - sum kappa_j s_j under
    /// box caps and the task-size budget.
    std::vector<double> best_shares(const std::vector<double>& b) const {
        const std::size_t n = size();
        std::vector<double> cap(n);
        std::vector<double> kappa(n);
        for (std::size_t k = 0; k < n; ++k) {
            cap[k] = share_cap(state, members[k], b[k]);
            kappa[k] = cap[k] > 0.0 ? unit_cost(k, b[k]) : kInf;
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t c) { return kappa[a] < kappa[c]; });

        const double phi = weights.satisfaction;
        const double unit = weights.share_unit;
        std::vector<double> s(n, 0.0);
        double placed = 0.0;
        double remaining = state.med.task_size;
        for (std::size_t k : order) {
            if (remaining <= 0.0 || cap[k] <= 0.0) {
                continue;
            }
            if (phi / (unit + placed) <= kappa[k]) {
                break;
            }
            const double target = kappa[k] > 0.0 ? phi / kappa[k] - unit : kInf;
            const double take = std::min({cap[k], target - placed, remaining});
            if (take <= 0.0) {
                break;
            }
            s[k] = take;
            placed += take;
            remaining -= take;
        }
        return s;
    }

    /// Exact bandwidth block: minimize transmission cost for fixed shares
    /// without breaking any member's deadline. Members without a share get
    /// whatever is left so the next share block can use them.
    std::vector<double> best_bandwidths(const std::vector<double>& s,
                                        const std::vector<double>& current) const {
        const std::size_t n = size();
        std::vector<double> lo(n);
        std::vector<double> hi(n);
        std::vector<double> weight(n);
        double hi_total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            hi[k] = b_max(k);
            lo[k] = std::min(bandwidth_floor(state, members[k], s[k]), current[k]);
            const double eff = state.spectral_efficiency[members[k]];
            weight[k] = (s[k] > 0.0 && eff > 0.0)
                            ? weights.comm_penalty * state.med.tx_power * s[k] / eff
                            : 0.0;
            hi_total += hi[k];
        }
        const double budget = state.env_bandwidth;
        if (hi_total <= budget) {
            return hi;
        }
        // Loaded members share the budget by KKT; idle ones sit at their floor
        // during the search and receive the remainder afterwards.
        std::vector<double> loaded_hi = hi;
        for (std::size_t k = 0; k < n; ++k) {
            if (weight[k] <= 0.0) {
                loaded_hi[k] = lo[k];
            }
        }
        std::vector<double> b = waterfill(lo, loaded_hi, budget, [&](std::size_t k, double lambda) {
            return weight[k] > 0.0 ? std::sqrt(weight[k] / lambda) : 0.0;
        });
        double slack = budget - std::accumulate(b.begin(), b.end(), 0.0);
        for (std::size_t k = 0; k < n && slack > 0.0; ++k) {
            const double add = std::min(slack, hi[k] - b[k]);
            if (add > 0.0) {
                b[k] += add;
                slack -= add;
            }
        }
        return b;
    }

    /// Bandwidth split maximizing the sum of share caps (concave in b),
    /// the starting point of the ascent.
    std::vector<double> capacity_start() const {
        const std::size_t n = size();
        std::vector<double> lo(n, 0.0);
        std::vector<double> hi(n);
        std::vector<double> useful(n);
        double hi_total = 0.0;
        const double tau = state.med.deadline;
        for (std::size_t k = 0; k < n; ++k) {
            hi[k] = std::min(b_max(k), state.env_bandwidth);
            hi_total += b_max(k);
            const UavTwin& uav = state.uavs[members[k]];
            const double a = state.spectral_efficiency[members[k]];
            const double c = state.med.complexity / uav.compute_max;
            // Beyond this bandwidth the cache, not the link, limits the share.
            const double cache_knee = (a > 0.0 && tau > uav.cache_max * c)
                                          ? uav.cache_max / (a * (tau - uav.cache_max * c))
                                          : kInf;
            useful[k] = a > 0.0 ? std::min(hi[k], cache_knee) : 0.0;
        }
        if (hi_total <= state.env_bandwidth) {
            return hi;
        }
        return waterfill(lo, useful, state.env_bandwidth, [&](std::size_t k, double lambda) {
            const double a = state.spectral_efficiency[members[k]];
            if (a <= 0.0) {
                return 0.0;
            }
            const double c = state.med.complexity / state.uavs[members[k]].compute_max;
            // d/db [tau a b / (1 + a c b)] = tau a / (1 + a c b)^2 = lambda
            return (std::sqrt(tau * a / lambda) - 1.0) / (a * c);
        });
    }

    std::vector<double> proportional_start() const {
        const std::size_t n = size();
        double hi_total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            hi_total += b_max(k);
        }
        const double scale = std::min(1.0, state.env_bandwidth / hi_total);
        std::vector<double> b(n);
        for (std::size_t k = 0; k < n; ++k) {
            b[k] = b_max(k) * scale;
        }
        return b;
    }

    struct Point {
        std::vector<double> s;
        std::vector<double> b;
        double value = -kInf;
        int iterations = 0;
    };

    Point ascend(std::vector<double> b, const SolverOptions& opts) const {
        Point p;
        p.b = std::move(b);
        p.s = best_shares(p.b);
        p.value = objective(p.s, p.b);
        for (p.iterations = 1; p.iterations < opts.max_iterations; ++p.iterations) {
            std::vector<double> b_next = best_bandwidths(p.s, p.b);
            std::vector<double> s_next = best_shares(b_next);
            const double v_next = objective(s_next, b_next);
            if (!(v_next >= p.value)) {
                break;
            }
            const double gain = v_next - p.value;
            p.s = std::move(s_next);
            p.b = std::move(b_next);
            p.value = v_next;
            if (gain <= opts.tol * std::max(1.0, std::abs(p.value))) {
                break;
            }
        }
        return p;
    }

    double value_at(const std::vector<double>& b) const { return objective(best_shares(b), b); }

    /// Pairwise bandwidth transfers on V(b) = max_s U(s, b), which is concave
    /// because U is jointly concave and the caps define a convex set. The
    /// alternating blocks can stall where a share cap couples the two; moving
    /// bandwidth and re-solving the shares gets past that.
    void rebalance(Point& p, const SolverOptions& opts) const {
        const std::size_t n = size();
        double hi_total = 0.0;
        double b_top = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            hi_total += b_max(k);
            b_top = std::max(b_top, b_max(k));
        }
        if (n < 2 || hi_total <= state.env_bandwidth) {
            return;
        }
        const double h = 1e-7 * b_top;
        // index n stands for the unassigned budget
        auto room_out = [&](std::size_t i) {
            return i == n ? state.env_bandwidth - std::accumulate(p.b.begin(), p.b.end(), 0.0) : p.b[i];
        };
        for (int round = 0; round < opts.max_iterations * static_cast<int>(n); ++round) {
            std::vector<double> up(n, -kInf);
            std::vector<double> down(n + 1, kInf);
            for (std::size_t k = 0; k < n; ++k) {
                const double room = b_max(k) - p.b[k];
                if (room > 0.0) {
                    std::vector<double> b = p.b;
                    b[k] += std::min(h, room);
                    up[k] = (value_at(b) - p.value) / (b[k] - p.b[k]);
                }
                if (p.b[k] > 0.0) {
                    std::vector<double> b = p.b;
                    b[k] = std::max(0.0, b[k] - h);
                    down[k] = (p.value - value_at(b)) / (p.b[k] - b[k]);
                }
            }
            if (room_out(n) > 0.0) {
                down[n] = 0.0;
            }
            std::size_t from = n;
            std::size_t to = n;
            double best_gap = 0.0;
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i != j && up[j] - down[i] > best_gap) {
                        best_gap = up[j] - down[i];
                        from = i;
                        to = j;
                    }
                }
            }
            if (to == n) {
                break;
            }
            const double span = std::min(room_out(from), b_max(to) - p.b[to]);
            auto moved = [&](double t) {
                std::vector<double> b = p.b;
                if (from < n) {
                    b[from] = std::max(0.0, b[from] - t);
                }
                b[to] = std::min(b_max(to), b[to] + t);
                return b;
            };
            // golden section, V is concave along the transfer
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            double lo = 0.0;
            double hi = span;
            double x1 = hi - g * (hi - lo);
            double x2 = lo + g * (hi - lo);
            double f1 = value_at(moved(x1));
            double f2 = value_at(moved(x2));
            for (int it = 0; it < 80 && hi - lo > 1e-12 * span; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + g * (hi - lo);
                    f2 = value_at(moved(x2));
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - g * (hi - lo);
                    f1 = value_at(moved(x1));
                }
            }
            double t = 0.5 * (lo + hi);
            double v = value_at(moved(t));
            const double v_end = value_at(moved(span));
            if (v_end > v) {
                t = span;
                v = v_end;
            }
            const double gain = v - p.value;
            if (!(gain > 0.0)) {
                break;
            }
            p.b = moved(t);
            p.s = best_shares(p.b);
            p.value = v;
            if (gain <= 1e-3 * opts.tol * std::max(1.0, std::abs(p.value))) {
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (p.s[k] <= 0.0) {
                p.b[k] = 0.0;
            }
        }
    }

    /// Releases bandwidth held by members without a share and lets the
    /// loaded members use it.
    void settle(Point& p, const SolverOptions& opts) const {
        for (int round = 0; round < opts.max_iterations; ++round) {
            std::vector<double> b = p.b;
            for (std::size_t k = 0; k < size(); ++k) {
                if (p.s[k] <= 0.0) {
                    b[k] = 0.0;
                }
            }
            // Idle members are pinned at zero for the bandwidth block.
            std::vector<double> s_fixed = p.s;
            std::vector<double> b_next = b;
            {
                std::vector<double> lo(size());
                std::vector<double> hi(size());
                std::vector<double> weight(size());
                double hi_total = 0.0;
                for (std::size_t k = 0; k < size(); ++k) {
                    const bool loaded = s_fixed[k] > 0.0;
                    hi[k] = loaded ? b_max(k) : 0.0;
                    lo[k] = loaded ? std::min(bandwidth_floor(state, members[k], s_fixed[k]), p.b[k]) : 0.0;
                    const double eff = state.spectral_efficiency[members[k]];
                    weight[k] = loaded && eff > 0.0
                                    ? weights.comm_penalty * state.med.tx_power * s_fixed[k] / eff
                                    : 0.0;
                    hi_total += hi[k];
                }
                if (hi_total <= state.env_bandwidth) {
                    b_next = hi;
                } else {
                    b_next = waterfill(lo, hi, state.env_bandwidth, [&](std::size_t k, double lambda) {
                        return weight[k] > 0.0 ? std::sqrt(weight[k] / lambda) : hi[k];
                    });
                }
            }
            std::vector<double> s_next = best_shares(b_next);
            const double v_next = objective(s_next, b_next);
            if (!(v_next >= p.value - 1e-12 * std::max(1.0, std::abs(p.value)))) {
                return;
            }
            const bool same_support = [&] {
                for (std::size_t k = 0; k < size(); ++k) {
                    if ((s_next[k] > 0.0) != (p.s[k] > 0.0)) {
                        return false;
                    }
                }
                return true;
            }();
            const double gain = v_next - p.value;
            p.s = std::move(s_next);
            p.b = std::move(b_next);
            p.value = std::max(p.value, v_next);
            if (same_support && gain <= opts.tol * std::max(1.0, std::abs(p.value))) {
                break;
            }
        }
        for (std::size_t k = 0; k < size(); ++k) {
            if (p.s[k] <= 0.0) {
                p.b[k] = 0.0;
            }
        }
    }
};

Problem::Point local_solve(const Coalition& members, const NetworkState& state,
                           const WeightConfig& weights, const SolverOptions& opts) {
    const Problem problem{members, state, weights};
    Problem::Point best = problem.ascend(problem.capacity_start(), opts);
    Problem::Point alt = problem.ascend(problem.proportional_start(), opts);
    if (alt.value > best.value) {
        best = std::move(alt);
    }
    problem.settle(best, opts);
    problem.rebalance(best, opts);
    return best;
}

} // namespace

double AllocationResult::total_share() const noexcept {
    return std::accumulate(shares.begin(), shares.end(), 0.0);
}

double min_feasible_frequency(double complexity, double share, double deadline,
                              double transmission_time, double compute_max) {
    if (share <= 0.0) {
        return 0.0;
    }
    const double window = deadline - transmission_time;
    if (!(window > 0.0)) {
        throw Error(ErrorKind::infeasible_deadline, "transmission alone exceeds the deadline");
    }
    return std::min(complexity * share / window, compute_max);
}

double share_cap(const NetworkState& state, std::size_t j, double bandwidth) {
    const double rate = state.capacity_at(j, bandwidth);
    if (!(rate > 0.0)) {
        return 0.0;
    }
    const UavTwin& uav = state.uavs[j];
    const double tau = state.med.deadline;
    const double at_full_clock = tau / (1.0 / rate + state.med.complexity / uav.compute_max);
    const double link_only = tau * rate;
    return std::min({uav.cache_max, at_full_clock, link_only});
}

double coalition_objective(std::span<const double> shares, std::span<const double> bandwidths,
                           const Coalition& coalition, const NetworkState& state,
                           const WeightConfig& weights) {
    double total = 0.0;
    double comm = 0.0;
    for (std::size_t k = 0; k < coalition.size(); ++k) {
        if (shares[k] <= 0.0) {
            continue;
        }
        const double rate = state.capacity_at(coalition[k], bandwidths[k]);
        if (!(rate > 0.0)) {
            return -kInf;
        }
        total += shares[k];
        comm += state.med.tx_power * shares[k] / rate;
    }
    return weights.satisfaction * std::log1p(total / weights.share_unit) - weights.comm_penalty * comm;
}

AllocationResult evaluate_allocation(const Coalition& coalition, std::vector<double> shares,
                                     std::vector<double> bandwidths, const NetworkState& state,
                                     const WeightConfig& weights) {
    AllocationResult out;
    out.members = coalition;
    out.shares = std::move(shares);
    out.bandwidths = std::move(bandwidths);
    out.frequencies.assign(coalition.size(), 0.0);

    std::vector<link::MemberLoad> loads;
    loads.reserve(coalition.size());
    for (std::size_t k = 0; k < coalition.size(); ++k) {
        const std::size_t j = coalition[k];
        const double s = out.shares[k];
        if (s > 0.0) {
            const double rate = state.capacity_at(j, out.bandwidths[k]);
            const double t_tr = link::delays(s, rate, state.med.complexity, 1.0).transmission;
            out.frequencies[k] = min_feasible_frequency(state.med.complexity, s, state.med.deadline,
                                                        t_tr, state.uavs[j].compute_max);
        }
        loads.push_back({state.uavs[j], s, out.bandwidths[k], out.frequencies[k]});
    }
    out.energy = link::coalition_energy(loads, state.med, state.link);
    out.coalition_utility = coalition_objective(out.shares, out.bandwidths, coalition, state, weights);
    out.participant_utilities.resize(coalition.size());
    for (std::size_t k = 0; k < coalition.size(); ++k) {
        out.participant_utilities[k] = participant_utility(k, out, state, weights);
    }
    return out;
}

AllocationResult idle_allocation(const Coalition& coalition, const NetworkState& state) {
    AllocationResult out;
    out.members = coalition;
    out.shares.assign(coalition.size(), 0.0);
    out.bandwidths.assign(coalition.size(), 0.0);
    out.frequencies.assign(coalition.size(), 0.0);
    out.participant_utilities.assign(coalition.size(), 0.0);
    (void)state;
    return out;
}

AllocationResult solve_allocation(const Coalition& coalition, const NetworkState& state,
                                  const WeightConfig& weights, const SolverOptions& opts) {
    if (coalition.empty()) {
        throw Error(ErrorKind::invalid_parameter, "empty coalition");
    }
    for (std::size_t j : coalition) {
        if (j >= state.size()) {
            throw Error(ErrorKind::invalid_parameter, "coalition member out of range");
        }
    }
    const std::size_t n = coalition.size();
    Problem::Point best = local_solve(coalition, state, weights, opts);

    double hi_total = 0.0;
    for (std::size_t j : coalition) {
        hi_total += state.uavs[j].bandwidth_max;
    }
    if (n >= 2 && hi_total > state.env_bandwidth) {
        // Each loaded member pays a near fixed transmission charge once its
        // link is deadline-bound, so a smaller active set can win.
        auto try_subset = [&](const std::vector<std::size_t>& keep) {
            Coalition sub;
            for (std::size_t k : keep) {
                sub.push_back(coalition[k]);
            }
            const Problem::Point q = local_solve(sub, state, weights, opts);
            Problem::Point full;
            full.s.assign(n, 0.0);
            full.b.assign(n, 0.0);
            for (std::size_t i = 0; i < keep.size(); ++i) {
                full.s[keep[i]] = q.s[i];
                full.b[keep[i]] = q.b[i];
            }
            full.value = q.value;
            full.iterations = q.iterations;
            return full;
        };
        auto better = [](const Problem::Point& a, const Problem::Point& b) {
            return a.value > b.value + 1e-12 * std::max(1.0, std::abs(b.value));
        };
        if (n <= kExhaustiveSupport) {
            for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
                std::vector<std::size_t> keep;
                for (std::size_t k = 0; k < n; ++k) {
                    if ((mask >> k) & 1U) {
                        keep.push_back(k);
                    }
                }
                Problem::Point q = try_subset(keep);
                if (better(q, best)) {
                    best = std::move(q);
                }
            }
        } else {
            for (;;) {
                std::vector<std::size_t> active;
                for (std::size_t k = 0; k < n; ++k) {
                    if (best.s[k] > 0.0) {
                        active.push_back(k);
                    }
                }
                if (active.size() < 2) {
                    break;
                }
                Problem::Point round_best = best;
                for (std::size_t drop = 0; drop < active.size(); ++drop) {
                    std::vector<std::size_t> keep = active;
                    keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(drop));
                    Problem::Point q = try_subset(keep);
                    if (better(q, round_best)) {
                        round_best = std::move(q);
                    }
                }
                if (!better(round_best, best)) {
                    break;
                }
                best = std::move(round_best);
            }
        }
    }

    AllocationResult out = evaluate_allocation(coalition, best.s, best.b, state, weights);
    out.iterations = best.iterations;
    return out;
}

double participant_utility(std::size_t k, const AllocationResult& allocation,
                           const NetworkState& state, const WeightConfig& weights) {
    const std::size_t j = allocation.members[k];
    const UavTwin& uav = state.uavs[j];
    const double hover = uav.hover_power * allocation.energy.completion_time;
    const double total = allocation.total_share();
    if (total <= 0.0) {
        return -weights.hover_penalty * hover;
    }
    const double s = allocation.shares[k];
    double compute = 0.0;
    if (s > 0.0) {
        const double f = allocation.frequencies[k];
        compute = uav.chip_coeff * f * f * f * (state.med.complexity * s / f);
    }
    return allocation.coalition_utility * (s / total) - weights.compute_penalty * compute
           - weights.hover_penalty * hover;
}

double max_constraint_violation(const AllocationResult& a, const NetworkState& state) {
    double worst = 0.0;
    auto note = [&](double lhs, double rhs) {
        worst = std::max(worst, (lhs - rhs) / std::max(1.0, std::abs(rhs)));
    };
    const double tau = state.med.deadline;
    const double theta = state.med.complexity;
    double b_sum = 0.0;
    double s_sum = 0.0;
    for (std::size_t k = 0; k < a.members.size(); ++k) {
        const std::size_t j = a.members[k];
        const UavTwin& uav = state.uavs[j];
        const double s = a.shares[k];
        const double b = a.bandwidths[k];
        const double f = a.frequencies[k];
        note(0.0, b);                      // C1 lower
        note(b, uav.bandwidth_max);        // C1 upper
        note(0.0, s);                      // C3 lower
        note(s, uav.cache_max);            // C3 upper
        note(0.0, f);
        note(f, uav.compute_max);          // C6
        b_sum += b;
        s_sum += s;
        if (s > 0.0) {
            const double full_rate = state.capacities[j];
            note(s, tau * full_rate);                                         // C9
            note(s, tau / (1.0 / full_rate + theta / uav.compute_max));       // C8
            const double rate = state.capacity_at(j, b);
            if (!(rate > 0.0) || !(f > 0.0)) {
                return kInf;
            }
            note(s / rate + theta * s / f, tau);                              // C7
        }
    }
    note(b_sum, state.env_bandwidth); // C2
    note(s_sum, state.med.task_size); // C4
    return worst;
}

double grid_oracle(const Coalition& coalition, const NetworkState& state,
                   const WeightConfig& weights, const GridOracleConfig& cfg) {
    const std::size_t n = coalition.size();
    if (n > static_cast<std::size_t>(cfg.max_members) || n > 3) {
        throw Error(ErrorKind::oracle_scale_exceeded, "grid oracle handles at most 3 members");
    }
    if (cfg.points_per_axis < 10) {
        throw Error(ErrorKind::invalid_parameter, "grid oracle needs >= 10 points per axis");
    }
    if (n == 0) {
        return 0.0;
    }
    const int points = cfg.points_per_axis;
    const double tau = state.med.deadline;
    const double theta = state.med.complexity;
    const double budget = state.env_bandwidth;
    const double task = state.med.task_size;
    const double phi = weights.satisfaction;
    const double unit = weights.share_unit;

    std::vector<double> s_step(n);
    std::vector<double> b_step(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = coalition[k];
        const UavTwin& uav = state.uavs[j];
        const double full_rate = state.capacities[j];
        double s_top = std::min(uav.cache_max, task);
        if (full_rate > 0.0) {
            s_top = std::min({s_top, tau * full_rate, tau / (1.0 / full_rate + theta / uav.compute_max)});
        } else {
            s_top = 0.0;
        }
        s_step[k] = s_top / (points - 1);
        b_step[k] = std::min(uav.bandwidth_max, budget) / (points - 1);
    }

    // Objective and every feasible set grow with each b_j, so only grid
    // points where no b_j can step up within the budget need a visit.
    double best = 0.0;
    std::vector<int> bi(n, 0);
    std::vector<double> b(n);
    std::vector<int> s_hi(n);
    std::vector<double> kappa(n);
    std::vector<int> si(n, 0);

    auto visit_shares = [&]() {
        // Shares of all but the last member are enumerated; the last one's
        // objective is concave so the two grid points around its continuous
        // maximizer are the only candidates.
        const std::size_t last = n - 1;
        std::fill(si.begin(), si.end(), 0);
        while (true) {
            double placed = 0.0;
            double cost = 0.0;
            for (std::size_t k = 0; k < last; ++k) {
                const double s = si[k] * s_step[k];
                placed += s;
                if (s > 0.0) {
                    cost += kappa[k] * s;
                }
            }
            if (placed <= task * (1.0 + 1e-12)) {
                int hi = s_hi[last];
                if (s_step[last] > 0.0) {
                    hi = std::min(hi, static_cast<int>(std::floor((task - placed) / s_step[last] + 1e-9)));
                } else {
                    hi = 0;
                }
                hi = std::max(hi, 0);
                double target = kappa[last] > 0.0 ? phi / kappa[last] - unit - placed : kInf;
                int lo_idx = 0;
                int hi_idx = hi;
                if (s_step[last] > 0.0 && std::isfinite(target)) {
                    const double idx = target / s_step[last];
                    lo_idx = std::clamp(static_cast<int>(std::floor(idx)), 0, hi);
                    hi_idx = std::clamp(static_cast<int>(std::ceil(idx)), 0, hi);
                }
                for (int idx : {0, lo_idx, hi_idx}) {
                    const double s = idx * s_step[last];
                    const double c = cost + (s > 0.0 ? kappa[last] * s : 0.0);
                    const double value = phi * std::log1p((placed + s) / unit) - c;
                    best = std::max(best, value);
                }
            }
            std::size_t k = 0;
            for (; k < last; ++k) {
                if (si[k] < s_hi[k]) {
                    ++si[k];
                    break;
                }
                si[k] = 0;
            }
            if (k == last) {
                break;
            }
        }
    };

    while (true) {
        // Last member takes the largest grid bandwidth the budget allows.
        double used = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            b[k] = bi[k] * b_step[k];
            used += b[k];
        }
        const std::size_t last = n - 1;
        const int last_idx = std::min(points - 1,
                                      static_cast<int>(std::floor((budget - used) / b_step[last] + 1e-9)));
        bool maximal = last_idx >= 0;
        if (maximal) {
            bi[last] = last_idx;
            b[last] = last_idx * b_step[last];
            const double total = used + b[last];
            for (std::size_t k = 0; k + 1 < n && maximal; ++k) {
                if (bi[k] + 1 < points && total + b_step[k] <= budget * (1.0 + 1e-12)) {
                    maximal = false;
                }
            }
        }
        if (maximal) {
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t j = coalition[k];
                const double rate = state.capacity_at(j, b[k]);
                if (rate > 0.0 && s_step[k] > 0.0) {
                    const double cap = tau / (1.0 / rate + theta / state.uavs[j].compute_max);
                    s_hi[k] = std::min(points - 1, static_cast<int>(std::floor(cap / s_step[k] * (1.0 + 1e-12))));
                    kappa[k] = weights.comm_penalty * state.med.tx_power / rate;
                } else {
                    s_hi[k] = 0;
                    kappa[k] = 0.0;
                }
            }
            visit_shares();
        }
        std::size_t k = 0;
        for (; k + 1 < n; ++k) {
            if (bi[k] + 1 < points) {
                ++bi[k];
                break;
            }
            bi[k] = 0;
        }
        if (k + 1 >= n) {
            break;
        }
    }
    return best;
}

double grid_resolution_bound(const Coalition& coalition, const NetworkState& state,
                             const WeightConfig& weights, int points_per_axis) {
    const double lipschitz = weights.satisfaction / weights.share_unit;
    const double tau = state.med.deadline;
    const double theta = state.med.complexity;
    double b_top_total = 0.0;
    for (std::size_t j : coalition) {
        b_top_total += std::min(state.uavs[j].bandwidth_max, state.env_bandwidth);
    }
    const bool bandwidth_on_grid = b_top_total <= state.env_bandwidth;
    double bound = 0.0;
    for (std::size_t j : coalition) {
        const UavTwin& uav = state.uavs[j];
        const double full_rate = state.capacities[j];
        double s_top = 0.0;
        if (full_rate > 0.0) {
            s_top = std::min({uav.cache_max, state.med.task_size, tau * full_rate,
                              tau / (1.0 / full_rate + theta / uav.compute_max)});
        }
        const double h_s = s_top / (points_per_axis - 1);
        bound += lipschitz * h_s;
        if (!bandwidth_on_grid) {
            // Rounding b down costs at most tau * efficiency * h_b of share
            // and, at worst, the member's transmission cost at the smallest
            // nonzero grid bandwidth.
            const double a = state.spectral_efficiency[j];
            const double h_b = std::min(uav.bandwidth_max, state.env_bandwidth) / (points_per_axis - 1);
            bound += lipschitz * tau * a * h_b;
            if (a > 0.0) {
                bound += weights.comm_penalty * state.med.tx_power * s_top / (a * h_b);
            }
        }
    }
    return bound;
}

} // namespace aeromec
