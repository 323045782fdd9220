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
#include <aeromec/harness.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <tuple>

namespace aeromec {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

FidelityOutcome apply_fidelity(const AllocationResult& a, double delta, const NetworkState& state) {
    if (!(delta > -1.0)) {
        throw Error(ErrorKind::invalid_parameter, "fidelity delta must be > -1");
    }
    FidelityOutcome out;
    out.estimated = a.energy;
    link::EnergyBreakdown& act = out.actual;
    const double theta = state.med.complexity;
    for (std::size_t k = 0; k < a.members.size(); ++k) {
        const double s = a.shares[k];
        if (s <= 0.0) {
            continue;
        }
        const std::size_t j = a.members[k];
        const UavTwin& uav = state.uavs[j];
        const double f = a.frequencies[k];
        const double f_true = f * (1.0 + delta);
        const double rate = link::capacity(a.bandwidths[k], state.gains[j], state.med.tx_power,
                                           state.link.noise);
        const link::Delays d = link::delays(s, rate, theta, f_true);
        act.comm += state.med.tx_power * d.transmission;
        act.compute += uav.chip_coeff * f * f * f * d.computation;
        act.completion_time = std::max(act.completion_time, d.transmission + d.computation);
        if (d.transmission + d.computation > state.med.deadline * (1.0 + 1e-12)) {
            out.deadline_violated = true;
        }
    }
    for (std::size_t j : a.members) {
        act.hover += state.uavs[j].hover_power * act.completion_time;
    }
    act.total = act.comm + act.compute + act.hover;
    return out;
}

double clock_fidelity(double delta) { return 1.0 - std::abs(delta / (1.0 + delta)); }

StrategyOutcome run_strategy(StrategyId strategy, const NetworkState& state,
                             const ScenarioConfig& config, const StrategyDataset* dataset) {
    StrategyOutcome out;
    out.strategy = strategy;
    switch (strategy) {
    case StrategyId::coalition_game: {
        CoalitionValuer valuer(state, config.weights);
        const Proposal proposal = propose({config.warm_start, dataset}, state);
        StabilizationReport report = stabilize(make_partition(proposal.grouping, valuer), valuer);
        out.partition = report.final;
        out.iterations = report.iterations;
        out.converged = report.converged;
        out.warm_start_fallback = proposal.fell_back;
        out.report = std::move(report);
        break;
    }
    case StrategyId::grand_coalition:
        out.partition = grand_coalition(state, config.weights);
        out.iterations = 1;
        break;
    case StrategyId::nash: {
        NashReport report = nash_equilibrium(state, config.weights);
        out.partition = std::move(report.partition);
        out.iterations = report.best_responses;
        out.converged = report.converged;
        break;
    }
    }
    return out;
}

SlotMetrics measure(const StrategyOutcome& outcome, const NetworkState& state,
                    const ScenarioConfig& config) {
    SlotMetrics m;
    m.slot = state.slot_index;
    m.strategy = outcome.strategy;
    m.warm_start = outcome.strategy == StrategyId::coalition_game ? config.warm_start : WarmStartKind::cold;
    m.seed = config.seed;
    m.iterations = outcome.iterations;
    m.converged = outcome.converged;
    m.warm_start_fallback = outcome.warm_start_fallback;
    const Partition& p = outcome.partition;
    m.n_coalitions = static_cast<int>(p.coalitions.size());

    const double theta = state.med.complexity;
    double cycles_used = 0.0;
    double cycles_offered = 0.0;
    double clock_used = 0.0;
    double clock_offered = 0.0;
    double utility_sum = 0.0;
    for (std::size_t k = 0; k < p.coalitions.size(); ++k) {
        if (!p.serving[k]) {
            continue;
        }
        const AllocationResult& a = p.allocations[k];
        m.comm_energy += a.energy.comm;
        m.compute_energy += a.energy.compute;
        m.hover_energy += a.energy.hover;
        m.total_energy += a.energy.total;
        m.completion_time = std::max(m.completion_time, a.energy.completion_time);
        m.coalition_utility += a.coalition_utility;
        const FidelityOutcome fid = apply_fidelity(a, config.fidelity_delta, state);
        m.estimated_energy += fid.estimated.total;
        m.actual_energy += fid.actual.total;
        m.deadline_violated = m.deadline_violated || fid.deadline_violated;
        for (std::size_t i = 0; i < a.members.size(); ++i) {
            const std::size_t j = a.members[i];
            utility_sum += a.participant_utilities[i];
            ++m.n_participants;
            const double s = a.shares[i];
            if (s > 0.0) {
                m.served_bits += s;
                const double f_max = state.uavs[j].compute_max;
                cycles_used += theta * s;
                cycles_offered += theta * std::min(share_cap(state, j, state.uavs[j].bandwidth_max), state.med.task_size);
                clock_used += a.frequencies[i];
                clock_offered += f_max;
            }
        }
    }
    if (cycles_offered > 0.0) {
        m.utilization = std::min(1.0, cycles_used / cycles_offered);
        m.clock_utilization = std::min(1.0, clock_used / clock_offered);
    }
    if (m.n_participants > 0) {
        m.mean_participant_utility = utility_sum / m.n_participants;
    }
    return m;
}

SlotMetrics run_slot(StrategyId strategy, const NetworkState& state, const ScenarioConfig& config,
                     const StrategyDataset* dataset) {
    return measure(run_strategy(strategy, state, config, dataset), state, config);
}

std::vector<SlotMetrics> run(const ScenarioConfig& config, const StrategyDataset* dataset) {
    validate(config);
    StrategyDataset loaded;
    if (config.warm_start == WarmStartKind::replay && dataset == nullptr && !config.dataset_path.empty()) {
        loaded = StrategyDataset::load(config.dataset_path);
        dataset = &loaded;
    }
    ScenarioGenerator gen(config);
    std::vector<SlotMetrics> rows;
    rows.reserve(static_cast<std::size_t>(config.n_slots) * config.strategies.size());
    for (int t = 0; t < config.n_slots; ++t) {
        const NetworkState state = gen.next();
        for (StrategyId s : config.strategies) {
            rows.push_back(run_slot(s, state, config, dataset));
        }
    }
    return rows;
}

const std::vector<std::string>& summary_metrics() {
    static const std::vector<std::string> names{
        "total_energy",     "comm_energy",      "compute_energy",
        "hover_energy",     "estimated_energy", "actual_energy",
        "completion_time",  "utilization",      "clock_utilization",
        "coalition_utility", "mean_participant_utility", "iterations",
        "converged",        "n_coalitions",     "n_participants",
        "served_bits",      "deadline_violated", "warm_start_fallback"};
    return names;
}

double metric_value(const SlotMetrics& r, const std::string& metric) {
    static const std::map<std::string, double (*)(const SlotMetrics&)> table{
        {"total_energy", [](const SlotMetrics& x) { return x.total_energy; }},
        {"comm_energy", [](const SlotMetrics& x) { return x.comm_energy; }},
        {"compute_energy", [](const SlotMetrics& x) { return x.compute_energy; }},
        {"hover_energy", [](const SlotMetrics& x) { return x.hover_energy; }},
        {"estimated_energy", [](const SlotMetrics& x) { return x.estimated_energy; }},
        {"actual_energy", [](const SlotMetrics& x) { return x.actual_energy; }},
        {"completion_time", [](const SlotMetrics& x) { return x.completion_time; }},
        {"utilization", [](const SlotMetrics& x) { return x.utilization; }},
        {"clock_utilization", [](const SlotMetrics& x) { return x.clock_utilization; }},
        {"coalition_utility", [](const SlotMetrics& x) { return x.coalition_utility; }},
        {"mean_participant_utility", [](const SlotMetrics& x) { return x.mean_participant_utility; }},
        {"iterations", [](const SlotMetrics& x) { return static_cast<double>(x.iterations); }},
        {"converged", [](const SlotMetrics& x) { return x.converged ? 1.0 : 0.0; }},
        {"n_coalitions", [](const SlotMetrics& x) { return static_cast<double>(x.n_coalitions); }},
        {"n_participants", [](const SlotMetrics& x) { return static_cast<double>(x.n_participants); }},
        {"served_bits", [](const SlotMetrics& x) { return x.served_bits; }},
        {"deadline_violated", [](const SlotMetrics& x) { return x.deadline_violated ? 1.0 : 0.0; }},
        {"warm_start_fallback", [](const SlotMetrics& x) { return x.warm_start_fallback ? 1.0 : 0.0; }},
    };
    const auto it = table.find(metric);
    if (it == table.end()) {
        throw Error(ErrorKind::invalid_parameter, "unknown metric '" + metric + "'");
    }
    return it->second(r);
}

const SummaryStat& SummaryRow::at(const std::string& metric) const {
    for (const auto& [name, stat] : stats) {
        if (name == metric) {
            return stat;
        }
    }
    throw Error(ErrorKind::invalid_parameter, "unknown metric '" + metric + "'");
}

std::vector<SummaryRow> aggregate(const std::vector<SlotMetrics>& rows) {
    if (rows.empty()) {
        throw Error(ErrorKind::empty_aggregate, "nothing to aggregate");
    }
    using Key = std::tuple<std::string, double, StrategyId, WarmStartKind>;
    std::vector<Key> order;
    std::map<Key, std::vector<const SlotMetrics*>> groups;
    for (const auto& r : rows) {
        Key key{r.sweep_param, r.sweep_value, r.strategy, r.warm_start};
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) {
            order.push_back(key);
        }
        it->second.push_back(&r);
    }
    std::vector<SummaryRow> out;
    for (const auto& key : order) {
        const auto& members = groups.at(key);
        SummaryRow row;
        std::tie(row.sweep_param, row.sweep_value, row.strategy, row.warm_start) = key;
        row.count = members.size();
        for (const auto& metric : summary_metrics()) {
            double sum = 0.0;
            for (const SlotMetrics* m : members) {
                sum += metric_value(*m, metric);
            }
            SummaryStat stat;
            stat.mean = sum / static_cast<double>(members.size());
            if (members.size() > 1) {
                double sq = 0.0;
                for (const SlotMetrics* m : members) {
                    const double d = metric_value(*m, metric) - stat.mean;
                    sq += d * d;
                }
                stat.stdev = std::sqrt(sq / static_cast<double>(members.size() - 1));
            }
            row.stats.emplace_back(metric, stat);
        }
        out.push_back(std::move(row));
    }
    return out;
}

void write_metrics_csv(std::ostream& out, const std::vector<SlotMetrics>& rows) {
    out << "sweep_param,sweep_value,seed,slot,strategy,warm_start";
    for (const auto& metric : summary_metrics()) {
        out << ',' << metric;
    }
    out << '\n';
    for (const auto& r : rows) {
        out << r.sweep_param << ',' << num(r.sweep_value) << ',' << r.seed << ',' << r.slot << ','
            << to_string(r.strategy) << ',' << to_string(r.warm_start);
        for (const auto& metric : summary_metrics()) {
            out << ',' << num(metric_value(r, metric));
        }
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << "sweep_param,sweep_value,strategy,warm_start,count";
    for (const auto& metric : summary_metrics()) {
        out << ',' << metric << "_mean," << metric << "_sd";
    }
    out << '\n';
    for (const auto& r : rows) {
        out << r.sweep_param << ',' << num(r.sweep_value) << ',' << to_string(r.strategy) << ','
            << to_string(r.warm_start) << ',' << r.count;
        for (const auto& [name, stat] : r.stats) {
            out << ',' << num(stat.mean) << ',' << num(stat.stdev);
        }
        out << '\n';
    }
}

std::size_t record_dataset(const ScenarioConfig& config, const std::filesystem::path& dataset_path) {
    validate(config);
    ScenarioGenerator gen(config);
    std::size_t written = 0;
    for (int t = 0; t < config.n_slots; ++t) {
        const NetworkState state = gen.next();
        CoalitionValuer valuer(state, config.weights);
        const Proposal proposal = propose({WarmStartKind::cold, nullptr}, state);
        const StabilizationReport report = stabilize(make_partition(proposal.grouping, valuer), valuer);
        if (report.converged) {
            record(dataset_path, state, report);
            ++written;
        }
    }
    return written;
}

} // namespace aeromec
