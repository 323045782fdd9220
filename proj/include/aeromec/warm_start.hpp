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
 * \file aeromec/warm_start.hpp
 *
 * \brief Preliminary coalition structures handed to the stabilization loop,
 *  and the strategy dataset they are replayed from.
 *
 * The dataset is newline-delimited JSON, one record per line:
 *
 *   {"features":[...],"partition":[[0,3],[1],[2]],"utility":12.5}
 */

#ifndef AEROMEC_WARM_START_HPP
#define AEROMEC_WARM_START_HPP

#include <aeromec/coalition.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace aeromec {

enum class WarmStartKind { cold, replay, heuristic };

std::string_view to_string(WarmStartKind kind) noexcept;
WarmStartKind warm_start_from_string(std::string_view name);

struct StrategyRecord {
    std::vector<double> features;
    Grouping partition;
    double utility = 0.0;
};

/// Scale-free descriptor of a slot: task size, complexity, deadline, fleet
/// size, then every UAV's share cap in descending order. Each entry is
/// divided by the midpoint of its nominal range.
std::vector<double> scenario_features(const NetworkState& state);

/// UAV indices ordered by share cap, largest first (ties by index). Replayed
/// partitions are mapped rank to rank.
std::vector<std::size_t> cap_ranking(const NetworkState& state);

class StrategyDataset {
public:
    StrategyDataset() = default;
    explicit StrategyDataset(std::vector<StrategyRecord> records) : records_(std::move(records)) {}

    /// Reads every record; a missing file is an empty dataset. Malformed
    /// lines raise io_failure.
    static StrategyDataset load(const std::filesystem::path& path);

    const std::vector<StrategyRecord>& records() const noexcept { return records_; }
    bool empty() const noexcept { return records_.empty(); }
    void add(StrategyRecord record) { records_.push_back(std::move(record)); }

    /// Closest record (Euclidean on features) recorded for `n_uavs`.
    const StrategyRecord* nearest(const std::vector<double>& features, std::size_t n_uavs) const;

private:
    std::vector<StrategyRecord> records_;
};

struct WarmStartProvider {
    WarmStartKind kind = WarmStartKind::cold;
    const StrategyDataset* dataset = nullptr; // required for replay
};

struct Proposal {
    Grouping grouping;
    bool fell_back = false; // replay had no usable record; heuristic used
};

Proposal propose(const WarmStartProvider& provider, const NetworkState& state);

StrategyRecord make_record(const NetworkState& state, const StabilizationReport& report);

/// Appends one record built from a converged report. Throws
/// invalid_parameter for an unconverged report, io_failure when the file
/// cannot be written.
StrategyRecord record(const std::filesystem::path& dataset_path, const NetworkState& state,
                      const StabilizationReport& report);

std::string record_to_json_line(const StrategyRecord& record);
StrategyRecord record_from_json_line(std::string_view line);

} // namespace aeromec

#endif // AEROMEC_WARM_START_HPP
