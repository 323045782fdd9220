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

#include <aeromec/baselines.hpp>
#include <aeromec/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace aeromec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool moved(double before, double after, double tol) {
    return std::abs(after - before) > tol * std::max(1.0, std::abs(before));
}

/// Maximizes a function concave on (0, hi] by a coarse scan followed by
/// golden-section refinement around the best scan point.
template <class F>
double maximize_on(double hi, int points, F f) {
    points = std::max(points, 3);
    const double step = hi / (points - 1);
    int best = 0;
    double best_value = f(0.0);
    for (int i = 1; i < points; ++i) {
        const double v = f(i * step);
        if (v > best_value) {
            best = i;
            best_value = v;
        }
    }
    if (best == 0) {
        return 0.0;
    }
    double a = std::max(0.0, (best - 1) * step);
    double b = std::min(hi, (best + 1) * step);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - ratio * (b - a);
    double x2 = a + ratio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && b - a > 1e-9 * std::max(1.0, b); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        }
    }
    double x = 0.5 * (a + b);
    double fx = f(x);
    for (double cand : {best * step, hi}) {
        const double v = f(cand);
        if (v > fx) {
            x = cand;
            fx = v;
        }
    }
    return fx > f(0.0) ? x : 0.0;
}

} // namespace

std::string_view to_string(StrategyId id) noexcept {
    switch (id) {
    case StrategyId::coalition_game:
        return "coalition_game";
    case StrategyId::grand_coalition:
        return "grand_coalition";
    case StrategyId::nash:
        return "nash";
    }
    return "unknown";
}

StrategyId strategy_from_string(std::string_view name) {
    for (StrategyId id : {StrategyId::coalition_game, StrategyId::grand_coalition, StrategyId::nash}) {
        if (name == to_string(id)) {
            return id;
        }
    }
    throw Error(ErrorKind::invalid_parameter, "unknown strategy '" + std::string(name) + "'");
}

Partition grand_coalition(const NetworkState& state, const WeightConfig& weights) {
    const std::size_t n = state.size();
    Coalition all(n);
    for (std::size_t j = 0; j < n; ++j) {
        all[j] = j;
    }
    std::vector<double> shares(n);
    std::vector<double> bandwidths(n);
    const double even_share = state.med.task_size / static_cast<double>(n);
    const double even_band = state.env_bandwidth / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        bandwidths[j] = std::min(state.uavs[j].bandwidth_max, even_band);
        shares[j] = std::min(even_share, share_cap(state, j, bandwidths[j]));
    }
    Partition p;
    p.n_uavs = n;
    p.coalitions = {all};
    p.allocations = {evaluate_allocation(all, shares, bandwidths, state, weights)};
    p.serving = {p.allocations.front().total_share() > 0.0};
    return p;
}

double standalone_utility(const NetworkState& state, const WeightConfig& weights, std::size_t j,
                          double share, double bandwidth) {
    if (share <= 0.0) {
        return 0.0;
    }
    const UavTwin& uav = state.uavs[j];
    if (bandwidth < 0.0 || bandwidth > uav.bandwidth_max || share > uav.cache_max) {
        return -kInf;
    }
    const double rate = state.capacity_at(j, bandwidth);
    if (!(rate > 0.0) || share > share_cap(state, j, bandwidth) * (1.0 + 1e-12)) {
        return -kInf;
    }
    const double tau = state.med.deadline;
    const double theta = state.med.complexity;
    const double t_tr = share / rate;
    if (!(t_tr < tau)) {
        return -kInf;
    }
    const double f = std::min(theta * share / (tau - t_tr), uav.compute_max);
    const double t_cp = theta * share / f;
    const double u_coalition = weights.satisfaction * std::log1p(share / weights.share_unit)
                               - weights.comm_penalty * state.med.tx_power * t_tr;
    const double e_cp = uav.chip_coeff * f * f * f * t_cp;
    const double e_h = uav.hover_power * (t_tr + t_cp);
    return u_coalition - weights.compute_penalty * e_cp - weights.hover_penalty * e_h;
}

NashReport nash_equilibrium(const NetworkState& state, const WeightConfig& weights,
                            const NashOptions& opts) {
    const std::size_t n = state.size();
    std::vector<double> s(n, 0.0);
    std::vector<double> b(n, 0.0);
    NashReport report;
    for (report.rounds = 1; report.rounds <= opts.max_rounds; ++report.rounds) {
        bool any_moved = false;
        for (std::size_t j = 0; j < n; ++j) {
            double s_others = 0.0;
            double b_others = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) {
                    s_others += s[k];
                    b_others += b[k];
                }
            }
            // Utility never falls with more bandwidth, so a UAV grabs what it
            // may and then picks its share.
            const double b_try = std::clamp(state.env_bandwidth - b_others, 0.0,
                                            state.uavs[j].bandwidth_max);
            const double s_room = std::max(0.0, state.med.task_size - s_others);
            const double s_hi = std::min(s_room, share_cap(state, j, b_try));
            double s_new = 0.0;
            if (s_hi > 0.0) {
                s_new = maximize_on(s_hi, opts.search_points, [&](double x) {
                    return standalone_utility(state, weights, j, x, b_try);
                });
            }
            const double b_new = s_new > 0.0 ? b_try : 0.0;
            ++report.best_responses;
            if (moved(s[j], s_new, opts.tol) || moved(b[j], b_new, opts.tol)) {
                any_moved = true;
            }
            s[j] = s_new;
            b[j] = b_new;
        }
        if (!any_moved) {
            report.converged = true;
            break;
        }
    }
    report.rounds = std::min(report.rounds, opts.max_rounds);

    Partition& p = report.partition;
    p.n_uavs = n;
    for (std::size_t j = 0; j < n; ++j) {
        p.coalitions.push_back({j});
        p.allocations.push_back(evaluate_allocation({j}, {s[j]}, {b[j]}, state, weights));
        p.serving.push_back(s[j] > 0.0);
    }
    return report;
}

} // namespace aeromec
