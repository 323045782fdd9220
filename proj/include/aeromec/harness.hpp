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
 * \file aeromec/harness.hpp
 *
 * \brief Slot loop, twin-fidelity analysis and metric aggregation.
 *
 * metrics.csv columns, one row per (slot, strategy):
 *
 *   sweep_param, sweep_value, seed, slot, strategy, warm_start,
 *   total_energy, comm_energy, compute_energy, hover_energy,
 *   estimated_energy, actual_energy, completion_time,
 *   utilization, clock_utilization, coalition_utility,
 *   mean_participant_utility, iterations, converged, n_coalitions,
 *   n_participants, served_bits, deadline_violated, warm_start_fallback
 *
 * Energies in J, times in s, bits in bits. `utilization` is the carried
 * share over what the same participants could carry at full bandwidth,
 * sum s_j / sum min(cap_j(b_max), s_i), counted over UAVs with a share in a
 * serving coalition. `clock_utilization` is sum f* / sum f_max over them.
 */

#ifndef AEROMEC_HARNESS_HPP
#define AEROMEC_HARNESS_HPP

#include <aeromec/baselines.hpp>
#include <aeromec/coalition.hpp>
#include <aeromec/link_energy.hpp>
#include <aeromec/scenario.hpp>
#include <aeromec/warm_start.hpp>

#include <filesystem>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aeromec {

struct FidelityOutcome {
    link::EnergyBreakdown estimated;
    link::EnergyBreakdown actual;
    bool deadline_violated = false;
};

/// Re-evaluates an allocation when every member's true clock is
/// f * (1 + delta) instead of the twin's f. Communication energy is
/// unchanged; computing energy keeps the power drawn at the planned clock
/// but runs for the true duration; hovering lasts the true makespan.
FidelityOutcome apply_fidelity(const AllocationResult& allocation, double delta,
                               const NetworkState& state);

/// Fidelity of the twin's clock estimate, 1 - |delta / (1 + delta)|.
double clock_fidelity(double delta);

struct StrategyOutcome {
    StrategyId strategy = StrategyId::coalition_game;
    Partition partition;
    int iterations = 0;
    bool converged = true;
    bool warm_start_fallback = false;
    std::optional<StabilizationReport> report; // coalition game only
};

StrategyOutcome run_strategy(StrategyId strategy, const NetworkState& state,
                             const ScenarioConfig& config, const StrategyDataset* dataset = nullptr);

struct SlotMetrics {
    std::string sweep_param;
    double sweep_value = 0.0;
    std::uint64_t seed = 0;
    int slot = 0;
    StrategyId strategy = StrategyId::coalition_game;
    WarmStartKind warm_start = WarmStartKind::cold;
    double total_energy = 0.0;
    double comm_energy = 0.0;
    double compute_energy = 0.0;
    double hover_energy = 0.0;
    double estimated_energy = 0.0;
    double actual_energy = 0.0;
    double completion_time = 0.0;
    double utilization = 0.0;
    double clock_utilization = 0.0;
    double coalition_utility = 0.0;
    double mean_participant_utility = 0.0;
    int iterations = 0;
    bool converged = true;
    int n_coalitions = 0;
    int n_participants = 0;
    double served_bits = 0.0;
    bool deadline_violated = false;
    bool warm_start_fallback = false;
};

SlotMetrics measure(const StrategyOutcome& outcome, const NetworkState& state,
                    const ScenarioConfig& config);

SlotMetrics run_slot(StrategyId strategy, const NetworkState& state,
                     const ScenarioConfig& config, const StrategyDataset* dataset = nullptr);

/// Every slot of one configuration under every configured strategy.
std::vector<SlotMetrics> run(const ScenarioConfig& config, const StrategyDataset* dataset = nullptr);

struct SummaryStat {
    double mean = 0.0;
    double stdev = 0.0; // sample standard deviation, 0 for one row
};

struct SummaryRow {
    std::string sweep_param;
    double sweep_value = 0.0;
    StrategyId strategy = StrategyId::coalition_game;
    WarmStartKind warm_start = WarmStartKind::cold;
    std::size_t count = 0;
    std::vector<std::pair<std::string, SummaryStat>> stats;

    const SummaryStat& at(const std::string& metric) const;
};

/// Means and sample deviations grouped by (sweep point, strategy, warm
/// start), in the order groups first appear. Throws empty_aggregate on empty input.
std::vector<SummaryRow> aggregate(const std::vector<SlotMetrics>& rows);

/// Names of the aggregated numeric columns.
const std::vector<std::string>& summary_metrics();
double metric_value(const SlotMetrics& row, const std::string& metric);

void write_metrics_csv(std::ostream& out, const std::vector<SlotMetrics>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Builds a strategy dataset by running the coalition game on the first
/// `config.n_slots` slots and recording every converged result.
std::size_t record_dataset(const ScenarioConfig& config, const std::filesystem::path& dataset_path);

} // namespace aeromec

#endif // AEROMEC_HARNESS_HPP
