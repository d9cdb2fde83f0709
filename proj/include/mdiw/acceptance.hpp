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

#ifndef MDIW_ACCEPTANCE_HPP
#define MDIW_ACCEPTANCE_HPP

#include <span>
#include <string>
#include <vector>

#include "mdiw/serialize.hpp"
#include "mdiw/witness.hpp"

namespace mdiw {

/// The catalog decompositions the suite checks. Replacing one (for example
/// with a corrupted coefficient) makes the criteria that depend on it fail.
struct AcceptanceFixtures {
    Decomposition tetrahedron;
    Decomposition pauli6;
    Decomposition ghz;
    /// ghz is the catalog table itself (no least-squares correction).
    bool ghz_table_exact;

    static AcceptanceFixtures standard();
};

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double budget_s;
    double elapsed_s;
};

inline constexpr int CRITERION_COUNT = 10;

/// Runs the criteria in `only` (all ten when empty), in id order. A criterion
/// over its runtime budget fails.
std::vector<CriterionResult> run_acceptance(const AcceptanceFixtures &fixtures, std::span<const int> only = {});

/// "PASS [3] name: detail (0.01 s / 1 s)"
std::string verdict_line(const CriterionResult &r);

/// {"all_passed": bool, "criteria": [{"id", "name", "passed", "detail"}]};
/// timings are omitted so that repeated runs give identical documents.
Json verdicts_to_json(std::span<const CriterionResult> results);

}  // namespace mdiw

#endif
