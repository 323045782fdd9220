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

namespace aeromec {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_scenario: return "InvalidScenario";
    case ErrorKind::degenerate_geometry: return "DegenerateGeometry";
    case ErrorKind::invalid_parameter: return "InvalidParameter";
    case ErrorKind::unreachable_uav: return "UnreachableUav";
    case ErrorKind::infeasible_deadline: return "InfeasibleDeadline";
    case ErrorKind::oracle_scale_exceeded: return "OracleScaleExceeded";
    case ErrorKind::invalid_comparison: return "InvalidComparison";
    case ErrorKind::io_failure: return "IoFailure";
    case ErrorKind::empty_aggregate: return "EmptyAggregate";
    }
    return "Unknown";
}

} // namespace aeromec
