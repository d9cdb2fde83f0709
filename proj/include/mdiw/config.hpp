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

#ifndef MDIW_CONFIG_HPP
#define MDIW_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdiw/attack.hpp"
#include "mdiw/serialize.hpp"

// Scenario files.
//
//   {
//     "parties": 2,
//     "witness": "singlet" | {"matrix": [[[re, im], ...], ...]},
//     "ensembles": ["tetrahedron", {"name": "custom", "states": [{"label": "a", "matrix": ...}]}],
//     "state": {"family": "werner" | "noisy_ghz", "v": 0.5} | {"family": "explicit", "matrix": ...},
//     "decomposition": "catalog" | "solve",
//     "loss": [etaA, etaB],
//     "attack": {"mode": "separable" | "biseparable", "restarts": 200, ...},
//     "expect": "bound" | "violable",
//     "full_outcomes": false
//   }
//
// A single ensemble entry is repeated for every party.

namespace mdiw {

/// Unusable scenario; the CLI exits with status 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ExplicitState {
    std::string label;
    ComplexMatrix matrix;
    bool operator==(const ExplicitState &) const = default;
};

struct EnsembleSpec {
    std::string name;
    /// Empty for the named catalog ensembles.
    std::vector<ExplicitState> states;
    bool operator==(const EnsembleSpec &) const = default;
};

struct StateSpec {
    std::string family;  // "werner", "noisy_ghz" or "explicit"
    double v = 1.0;
    std::optional<ComplexMatrix> matrix;
    bool operator==(const StateSpec &) const = default;
};

enum class AttackMode { separable, biseparable };
enum class Expectation { bound, violable };

struct ScenarioConfig {
    std::size_t parties = 2;
    std::string witness = "singlet";  // "explicit" when witness_matrix is set
    std::optional<ComplexMatrix> witness_matrix;
    std::vector<EnsembleSpec> ensembles;
    std::optional<StateSpec> state;
    std::string decomposition = "catalog";
    std::vector<double> loss;  // empty = lossless
    AttackConfig attack;
    AttackMode attack_mode = AttackMode::separable;
    Expectation expect = Expectation::bound;
    bool full_outcomes = false;

    bool operator==(const ScenarioConfig &) const = default;
};

ScenarioConfig parse_config(const Json &j);
ScenarioConfig parse_config_text(const std::string &text);
ScenarioConfig load_config(const std::string &path);
Json serialize_config(const ScenarioConfig &c);

/// MDIW_SEED, when set, replaces attack.seed.
void apply_environment(ScenarioConfig &c);

Witness resolve_witness(const ScenarioConfig &c);
std::vector<InputEnsemble> resolve_ensembles(const ScenarioConfig &c);
/// State at the configured v (or the explicit matrix).
DensityMatrix resolve_state(const ScenarioConfig &c);
/// State family in v; throws ConfigError for explicit states.
StateFamily resolve_family(const ScenarioConfig &c);
/// "catalog" selects the catalog decomposition for the witness/ensemble pair;
/// "solve" runs decompose().
Decomposition resolve_decomposition(const ScenarioConfig &c);

}  // namespace mdiw

#endif
