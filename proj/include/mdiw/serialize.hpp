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

#ifndef MDIW_SERIALIZE_HPP
#define MDIW_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "mdiw/attack.hpp"
#include "mdiw/witness.hpp"

namespace mdiw {

using Json = nlohmann::ordered_json;

/// Matrices are nested row-major arrays of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j);

/// {"ensembles": [names], "beta": nested arrays by party, "residual": r, ...}
Json decomposition_to_json(const Decomposition &dec);

Json attack_config_to_json(const AttackConfig &c);
AttackConfig attack_config_from_json(const Json &j, AttackConfig defaults = {});

/// {"min_I", "restart_minima", "evals", "seed", "config", ...}. Wall time is
/// left out so identical configurations give identical output.
Json attack_report_to_json(const AttackReport &r);

/// printf("%.17g").
std::string format_double(double x);

}  // namespace mdiw

#endif
