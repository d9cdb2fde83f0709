// Copyright 2026 The MDIW Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MDIW_COMMANDS_HPP
#define MDIW_COMMANDS_HPP

#include <optional>
#include <string>

#include "mdiw/config.hpp"

namespace mdiw {

enum ExitCode : int { EXIT_OK = 0, EXIT_FAILED = 1, EXIT_CONFIG = 2 };

struct CommandOutput {
    int exit_code = EXIT_OK;
    /// Pretty-printed JSON document (decomposition, summary, report or verdicts).
    std::string json;
    /// CSV table, when the command produces one.
    std::string csv;
};

/// Exit 0 iff the reconstruction residual is at most TOL_RECON.
CommandOutput cmd_decompose(const ScenarioConfig &c);

/// Bell-strategy correlation table (CSV) and {"I", "expected",
/// "witness_value_scaled"}; configured loss is applied to the table.
CommandOutput cmd_simulate(const ScenarioConfig &c);

/// CSV rows v,I,expected,abs_err on an evenly spaced grid. Requires
/// 0 <= from < to <= 1 and steps >= 2.
CommandOutput cmd_scan(const ScenarioConfig &c, double from, double to, std::size_t steps);

/// Exit 0 iff min_I >= -1e-9, or iff min_I < 0 for expect = "violable".
CommandOutput cmd_attack(const ScenarioConfig &c);

/// The acceptance suite; exit 0 iff every criterion passes.
CommandOutput cmd_verify();

/// Closed form of the Bell-strategy value for the named families paired with
/// their witnesses, times the product of efficiencies; nullopt otherwise.
std::optional<double> expected_value(const ScenarioConfig &c, double v);

inline constexpr double BOUND_TOL = 1e-9;

}  // namespace mdiw

#endif
