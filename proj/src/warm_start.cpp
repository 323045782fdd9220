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
#include <aeromec/warm_start.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include <json.hpp>

namespace aeromec {

namespace {

// Midpoints of the nominal parameter ranges.
constexpr double kTaskMid = 15.0 * kBitsPerMbyte;
constexpr double kComplexityMid = 175.0;
constexpr double kDeadlineMid = 0.325;
constexpr double kFleetMid = 17.5;
constexpr double kCapMid = 1.5 * kBitsPerMbyte;

double full_cap(const NetworkState& state, std::size_t j) {
    return std::min(share_cap(state, j, state.uavs[j].bandwidth_max), state.med.task_size);
}

std::size_t members_in(const Grouping& groups) {
    std::size_t n = 0;
    for (const auto& g : groups) {
        n += g.size();
    }
    return n;
}

} // namespace

std::string_view to_string(WarmStartKind kind) noexcept {
    switch (kind) {
    case WarmStartKind::cold:
        return "cold";
    case WarmStartKind::replay:
        return "replay";
    case WarmStartKind::heuristic:
        return "heuristic";
    }
    return "unknown";
}

WarmStartKind warm_start_from_string(std::string_view name) {
    for (WarmStartKind k : {WarmStartKind::cold, WarmStartKind::replay, WarmStartKind::heuristic}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    throw Error(ErrorKind::invalid_parameter, "unknown warm start '" + std::string(name) + "'");
}

std::vector<std::size_t> cap_ranking(const NetworkState& state) {
    std::vector<std::size_t> order(state.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> caps(state.size());
    for (std::size_t j = 0; j < state.size(); ++j) {
        caps[j] = full_cap(state, j);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return caps[a] > caps[b]; });
    return order;
}

std::vector<double> scenario_features(const NetworkState& state) {
    std::vector<double> f{state.med.task_size / kTaskMid, state.med.complexity / kComplexityMid,
                          state.med.deadline / kDeadlineMid,
                          static_cast<double>(state.size()) / kFleetMid};
    for (std::size_t j : cap_ranking(state)) {
        f.push_back(full_cap(state, j) / kCapMid);
    }
    return f;
}

StrategyDataset StrategyDataset::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        return {};
    }
    std::vector<StrategyRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        records.push_back(record_from_json_line(line));
    }
    return StrategyDataset(std::move(records));
}

const StrategyRecord* StrategyDataset::nearest(const std::vector<double>& features,
                                               std::size_t n_uavs) const {
    const StrategyRecord* best = nullptr;
    double best_d = 0.0;
    for (const auto& r : records_) {
        if (members_in(r.partition) != n_uavs || r.features.size() != features.size()) {
            continue;
        }
        double d = 0.0;
        for (std::size_t i = 0; i < features.size(); ++i) {
            d += (r.features[i] - features[i]) * (r.features[i] - features[i]);
        }
        if (best == nullptr || d < best_d) {
            best = &r;
            best_d = d;
        }
    }
    return best;
}

namespace {

Grouping heuristic_grouping(const NetworkState& state) {
    Grouping groups;
    Coalition lead;
    double covered = 0.0;
    const auto order = cap_ranking(state);
    std::size_t i = 0;
    for (; i < order.size() && covered < state.med.task_size; ++i) {
        lead.push_back(order[i]);
        covered += full_cap(state, order[i]);
    }
    if (!lead.empty()) {
        groups.push_back(lead);
    }
    for (; i < order.size(); ++i) {
        groups.push_back({order[i]});
    }
    return groups;
}

} // namespace

Proposal propose(const WarmStartProvider& provider, const NetworkState& state) {
    const std::size_t n = state.size();
    Proposal out;
    switch (provider.kind) {
    case WarmStartKind::cold:
        for (std::size_t j = 0; j < n; ++j) {
            out.grouping.push_back({j});
        }
        break;
    case WarmStartKind::heuristic:
        out.grouping = heuristic_grouping(state);
        break;
    case WarmStartKind::replay: {
        const StrategyRecord* hit = provider.dataset != nullptr
                                        ? provider.dataset->nearest(scenario_features(state), n)
                                        : nullptr;
        if (hit == nullptr) {
            out.grouping = heuristic_grouping(state);
            out.fell_back = true;
            break;
        }
        const auto order = cap_ranking(state);
        for (const auto& g : hit->partition) {
            Coalition c;
            for (std::size_t rank : g) {
                c.push_back(order.at(rank));
            }
            out.grouping.push_back(std::move(c));
        }
        break;
    }
    }
    out.grouping = canonical_grouping(std::move(out.grouping), n);
    return out;
}

StrategyRecord make_record(const NetworkState& state, const StabilizationReport& report) {
    if (!report.converged) {
        throw Error(ErrorKind::invalid_parameter, "only converged results are recorded");
    }
    const auto order = cap_ranking(state);
    std::vector<std::size_t> rank_of(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank_of[order[r]] = r;
    }
    StrategyRecord rec;
    rec.features = scenario_features(state);
    for (const auto& g : report.final.coalitions) {
        Coalition ranks;
        for (std::size_t j : g) {
            ranks.push_back(rank_of[j]);
        }
        std::sort(ranks.begin(), ranks.end());
        rec.partition.push_back(std::move(ranks));
    }
    rec.partition = canonical_grouping(std::move(rec.partition), order.size());
    rec.utility = served_utility(report.final);
    return rec;
}

StrategyRecord record(const std::filesystem::path& dataset_path, const NetworkState& state,
                      const StabilizationReport& report) {
    StrategyRecord rec = make_record(state, report);
    std::ofstream out(dataset_path, std::ios::app);
    if (!out) {
        throw Error(ErrorKind::io_failure, "cannot append to " + dataset_path.string());
    }
    out << record_to_json_line(rec) << '\n';
    if (!out) {
        throw Error(ErrorKind::io_failure, "write failed on " + dataset_path.string());
    }
    return rec;
}

std::string record_to_json_line(const StrategyRecord& record) {
    nlohmann::json j;
    j["features"] = record.features;
    j["partition"] = record.partition;
    j["utility"] = record.utility;
    return j.dump();
}

StrategyRecord record_from_json_line(std::string_view line) {
    try {
        const auto j = nlohmann::json::parse(line);
        StrategyRecord rec;
        rec.features = j.at("features").get<std::vector<double>>();
        rec.partition = j.at("partition").get<Grouping>();
        rec.utility = j.at("utility").get<double>();
        for (double f : rec.features) {
            if (!std::isfinite(f)) {
                throw Error(ErrorKind::io_failure, "non-finite feature in strategy record");
            }
        }
        rec.partition = canonical_grouping(std::move(rec.partition), members_in(rec.partition));
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::io_failure, std::string("malformed strategy record: ") + e.what());
    } catch (const Error& e) {
        throw Error(ErrorKind::io_failure, std::string("malformed strategy record: ") + e.what());
    }
}

} // namespace aeromec
