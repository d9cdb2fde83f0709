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

#include "mdiw/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace mdiw {

namespace {

const std::set<std::string> TOP_LEVEL_KEYS = {"parties", "witness", "ensembles", "state", "decomposition",
                                              "loss", "attack", "expect", "full_outcomes"};

template <typename F>
auto guarded(const char *what, F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

EnsembleSpec parse_ensemble(const Json &j) {
    EnsembleSpec spec;
    if (j.is_string()) {
        spec.name = j.get<std::string>();
        if (spec.name != "tetrahedron" && spec.name != "pauli6") {
            throw ConfigError("ensembles: unknown ensemble '" + spec.name + "'");
        }
        return spec;
    }
    if (!j.is_object() || !j.contains("states") || !j.at("states").is_array() || j.at("states").empty()) {
        throw ConfigError("ensembles: expected a name or {\"name\", \"states\": [...]}");
    }
    spec.name = j.value("name", std::string("explicit"));
    for (const auto &s : j.at("states")) {
        if (!s.contains("label") || !s.contains("matrix")) {
            throw ConfigError("ensembles: each state needs \"label\" and \"matrix\"");
        }
        spec.states.push_back(
            {s.at("label").get<std::string>(), guarded("ensembles", [&] { return matrix_from_json(s.at("matrix")); })});
    }
    return spec;
}

Json serialize_ensemble(const EnsembleSpec &e) {
    if (e.states.empty()) {
        return e.name;
    }
    Json states = Json::array();
    for (const auto &s : e.states) {
        states.push_back(Json{{"label", s.label}, {"matrix", matrix_to_json(s.matrix)}});
    }
    return Json{{"name", e.name}, {"states", std::move(states)}};
}

StateSpec parse_state(const Json &j) {
    if (!j.is_object() || !j.contains("family")) {
        throw ConfigError("state: expected {\"family\": ...}");
    }
    StateSpec s;
    s.family = j.at("family").get<std::string>();
    if (s.family == "explicit") {
        if (!j.contains("matrix")) {
            throw ConfigError("state: explicit family needs \"matrix\"");
        }
        s.matrix = guarded("state", [&] { return matrix_from_json(j.at("matrix")); });
        s.v = 0.0;
        return s;
    }
    if (s.family != "werner" && s.family != "noisy_ghz") {
        throw ConfigError("state: unknown family '" + s.family + "'");
    }
    if (j.contains("v")) {
        s.v = j.at("v").get<double>();
    }
    if (!(s.v >= 0.0 && s.v <= 1.0)) {
        throw ConfigError("state: v must lie in [0, 1]");
    }
    return s;
}

}  // namespace

ScenarioConfig parse_config(const Json &j) {
    if (!j.is_object()) {
        throw ConfigError("config: expected a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (!TOP_LEVEL_KEYS.count(key)) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return guarded("config", [&] {
        ScenarioConfig c;
        c.parties = j.value("parties", std::size_t{2});
        if (c.parties != 2 && c.parties != 3) {
            throw ConfigError("parties: must be 2 or 3");
        }

        if (j.contains("witness")) {
            const auto &w = j.at("witness");
            if (w.is_string()) {
                c.witness = w.get<std::string>();
                if (c.witness != "singlet" && c.witness != "ghz") {
                    throw ConfigError("witness: unknown witness '" + c.witness + "'");
                }
            } else if (w.is_object() && w.contains("matrix")) {
                c.witness = "explicit";
                c.witness_matrix = guarded("witness", [&] { return matrix_from_json(w.at("matrix")); });
            } else {
                throw ConfigError("witness: expected a name or {\"matrix\": ...}");
            }
        } else {
            c.witness = c.parties == 3 ? "ghz" : "singlet";
        }

        if (j.contains("ensembles")) {
            const auto &e = j.at("ensembles");
            if (!e.is_array()) {
                c.ensembles.assign(c.parties, parse_ensemble(e));
            } else if (e.size() == 1) {
                c.ensembles.assign(c.parties, parse_ensemble(e[0]));
            } else if (e.size() == c.parties) {
                for (const auto &x : e) {
                    c.ensembles.push_back(parse_ensemble(x));
                }
            } else {
                throw ConfigError("ensembles: need one entry or one per party");
            }
        } else {
            c.ensembles.assign(c.parties, EnsembleSpec{"tetrahedron", {}});
        }

        if (j.contains("state")) {
            c.state = parse_state(j.at("state"));
        }

        c.decomposition = j.value("decomposition", std::string("catalog"));
        if (c.decomposition != "catalog" && c.decomposition != "solve") {
            throw ConfigError("decomposition: must be \"catalog\" or \"solve\"");
        }

        if (j.contains("loss")) {
            c.loss = j.at("loss").get<std::vector<double>>();
            if (c.loss.size() != c.parties) {
                throw ConfigError("loss: need one efficiency per party");
            }
            for (double eta : c.loss) {
                if (!(eta > 0.0 && eta <= 1.0)) {
                    throw ConfigError("loss: efficiencies must lie in (0, 1]");
                }
            }
        }

        if (j.contains("attack")) {
            const auto &a = j.at("attack");
            c.attack = guarded("attack", [&] { return attack_config_from_json(a); });
            const std::string mode = a.value("mode", std::string("separable"));
            if (mode == "separable") {
                c.attack_mode = AttackMode::separable;
            } else if (mode == "biseparable") {
                c.attack_mode = AttackMode::biseparable;
            } else {
                throw ConfigError("attack.mode: must be \"separable\" or \"biseparable\"");
            }
        }

        const std::string expect = j.value("expect", std::string("bound"));
        if (expect == "bound") {
            c.expect = Expectation::bound;
        } else if (expect == "violable") {
            c.expect = Expectation::violable;
        } else {
            throw ConfigError("expect: must be \"bound\" or \"violable\"");
        }

        c.full_outcomes = j.value("full_outcomes", false);
        return c;
    });
}

ScenarioConfig parse_config_text(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return parse_config(j);
}

ScenarioConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Json serialize_config(const ScenarioConfig &c) {
    Json j;
    j["parties"] = c.parties;
    if (c.witness_matrix) {
        j["witness"] = Json{{"matrix", matrix_to_json(*c.witness_matrix)}};
    } else {
        j["witness"] = c.witness;
    }
    Json ensembles = Json::array();
    for (const auto &e : c.ensembles) {
        ensembles.push_back(serialize_ensemble(e));
    }
    j["ensembles"] = std::move(ensembles);
    if (c.state) {
        if (c.state->matrix) {
            j["state"] = Json{{"family", "explicit"}, {"matrix", matrix_to_json(*c.state->matrix)}};
        } else {
            j["state"] = Json{{"family", c.state->family}, {"v", c.state->v}};
        }
    }
    j["decomposition"] = c.decomposition;
    if (!c.loss.empty()) {
        j["loss"] = c.loss;
    }
    Json attack = attack_config_to_json(c.attack);
    attack["mode"] = c.attack_mode == AttackMode::separable ? "separable" : "biseparable";
    j["attack"] = std::move(attack);
    j["expect"] = c.expect == Expectation::bound ? "bound" : "violable";
    j["full_outcomes"] = c.full_outcomes;
    return j;
}

void apply_environment(ScenarioConfig &c) {
    const char *seed = std::getenv("MDIW_SEED");
    if (seed == nullptr || *seed == '\0') {
        return;
    }
    char *end = nullptr;
    errno = 0;
    const unsigned long long value = std::strtoull(seed, &end, 10);
    if (errno != 0 || *end != '\0' || seed[0] == '-') {
        throw ConfigError(std::string("MDIW_SEED: not an unsigned integer: ") + seed);
    }
    c.attack.seed = value;
}

std::vector<InputEnsemble> resolve_ensembles(const ScenarioConfig &c) {
    return guarded("ensembles", [&] {
        std::vector<InputEnsemble> out;
        for (const auto &e : c.ensembles) {
            if (e.states.empty()) {
                out.push_back(ensemble_by_name(e.name));
                continue;
            }
            std::vector<LabeledState> members;
            for (const auto &s : e.states) {
                members.push_back({s.label, DensityMatrix(s.matrix)});
            }
            out.emplace_back(e.name, std::move(members));
        }
        return out;
    });
}

Witness resolve_witness(const ScenarioConfig &c) {
    return guarded("witness", [&] {
        const auto ensembles = resolve_ensembles(c);
        std::vector<std::size_t> dims;
        for (const auto &e : ensembles) {
            dims.push_back(e.dim());
        }
        std::optional<Witness> w;
        if (c.witness_matrix) {
            w.emplace(*c.witness_matrix, DimsProfile(dims),
                      c.parties == 2 ? WitnessKind::bipartite_separability : WitnessKind::genuine_multipartite);
        } else if (c.witness == "singlet") {
            w.emplace(singlet_witness());
        } else if (c.witness == "ghz") {
            w.emplace(ghz_witness());
        } else {
            throw ConfigError("witness: unknown witness '" + c.witness + "'");
        }
        if (w->parties() != c.parties || w->dims().values() != dims) {
            throw ConfigError("witness: dims do not match the parties' input ensembles");
        }
        return *w;
    });
}

DensityMatrix resolve_state(const ScenarioConfig &c) {
    if (!c.state) {
        throw ConfigError("state: missing");
    }
    return guarded("state", [&] {
        const auto w = resolve_witness(c);
        std::optional<DensityMatrix> rho;
        if (c.state->matrix) {
            rho.emplace(*c.state->matrix, w.dims());
        } else {
            rho.emplace(resolve_family(c)(c.state->v));
        }
        if (rho->dims() != w.dims()) {
            throw ConfigError("state: dims do not match the witness");
        }
        return *rho;
    });
}

StateFamily resolve_family(const ScenarioConfig &c) {
    if (!c.state) {
        throw ConfigError("state: missing");
    }
    if (c.state->family == "werner") {
        return werner_state;
    }
    if (c.state->family == "noisy_ghz") {
        return noisy_ghz;
    }
    throw ConfigError("state: family '" + c.state->family + "' has no parameter to scan");
}

Decomposition resolve_decomposition(const ScenarioConfig &c) {
    const auto w = resolve_witness(c);
    const auto ensembles = resolve_ensembles(c);
    if (c.decomposition == "solve") {
        return guarded("decomposition", [&] { return decompose(w, ensembles); });
    }
    auto all_named = [&](const std::string &name) {
        for (const auto &e : c.ensembles) {
            if (!e.states.empty() || e.name != name) {
                return false;
            }
        }
        return true;
    };
    if (c.witness == "singlet" && all_named("tetrahedron")) {
        return tetrahedron_beta();
    }
    if (c.witness == "singlet" && all_named("pauli6")) {
        return pauli6_beta();
    }
    if (c.witness == "ghz" && all_named("tetrahedron")) {
        return ghz_decompositions().preferred();
    }
    throw ConfigError("decomposition: no catalog decomposition for this witness and ensembles; use \"solve\"");
}

}  // namespace mdiw
