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

#ifndef AEROMEC_ERROR_HPP
#define AEROMEC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace aeromec {

enum class ErrorKind {
    invalid_scenario,
    degenerate_geometry,
    invalid_parameter,
    unreachable_uav,
    infeasible_deadline,
    oracle_scale_exceeded,
    invalid_comparison,
    io_failure,
    empty_aggregate,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and tests)
/// can dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace aeromec

#endif // AEROMEC_ERROR_HPP
