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

#include "mdiw/serialize.hpp"

#include <cstdio>

namespace mdiw {

namespace {

Json nested_beta(const Decomposition &dec, std::size_t party, std::size_t &flat) {
    Json arr = Json::array();
    const std::size_t n = dec.ensembles()[party].size();
    for (std::size_t i = 0; i < n; ++i) {
        if (party + 1 == dec.parties()) {
            arr.push_back(dec.beta()[flat++]);
        } else {
            arr.push_back(nested_beta(dec, party + 1, flat));
        }
    }
    return arr;
}

Json strategy_to_json(const StrategySnapshot &snapshot) {
    Json j;
    std::visit(
        [&](const auto &s) {
            Json effects = Json::array();
            for (const auto &d : s.devices()) {
                effects.push_back(matrix_to_json(d.povm().element(1)));
            }
            j["effects"] = std::move(effects);
            Json terms = Json::array();
            using T = std::decay_t<decltype(s)>;
            for (const auto &t : s.terms()) {
                Json term;
                term["weight"] = t.weight;
                if constexpr (std::is_same_v<T, SeparableStrategy>) {
                    Json shares = Json::array();
                    for (const auto &sh : t.shares) {
                        shares.push_back(matrix_to_json(sh.matrix()));
                    }
                    term["shares"] = std::move(shares);
                } else {
                    term["cut"] = t.cut.name();
                    term["group_state"] = matrix_to_json(t.group_state.matrix());
                    term["single_state"] = matrix_to_json(t.single_state.matrix());
                }
                terms.push_back(std::move(term));
            }
            j["type"] = std::is_same_v<T, SeparableStrategy> ? "separable" : "biseparable";
            j["terms"] = std::move(terms);
        },
        snapshot);
    return j;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("matrix: expected a nonempty array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != cols) {
            throw std::invalid_argument("matrix: ragged rows");
        }
        for (const auto &z : row) {
            if (z.is_number()) {
                entries.emplace_back(z.get<double>(), 0.0);
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                entries.emplace_back(z[0].get<double>(), z[1].get<double>());
            } else {
                throw std::invalid_argument("matrix: entries must be [re, im] pairs");
            }
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

Json decomposition_to_json(const Decomposition &dec) {
    Json j;
    Json names = Json::array();
    Json labels = Json::array();
    for (const auto &e : dec.ensembles()) {
        names.push_back(e.name());
        labels.push_back(e.labels());
    }
    j["ensembles"] = std::move(names);
    j["labels"] = std::move(labels);
    std::size_t flat = 0;
    j["beta"] = nested_beta(dec, 0, flat);
    j["residual"] = dec.residual();
    j["exact"] = dec.exact();
    j["source"] = dec.source();
    return j;
}

Json attack_config_to_json(const AttackConfig &c) {
    return Json{{"restarts", c.restarts},
                {"iterations", c.iterations},
                {"mixture_size", c.mixture_size},
                {"share_dim", c.share_dim},
                {"seed", c.seed},
                {"initial_step", c.initial_step},
                {"decay", c.decay},
                {"threads", c.threads},
                {"mixed_shares", c.mixed_shares}};
}

AttackConfig attack_config_from_json(const Json &j, AttackConfig c) {
    if (!j.is_object()) {
        throw std::invalid_argument("attack: expected an object");
    }
    auto count = [&](const char *key, std::size_t &field) {
        if (j.contains(key)) {
            const auto &v = j.at(key);
            if (!v.is_number_integer() || v.get<long long>() < 1) {
                throw std::invalid_argument(std::string("attack.") + key + " must be a positive integer");
            }
            field = v.get<std::size_t>();
        }
    };
    count("restarts", c.restarts);
    count("iterations", c.iterations);
    count("mixture_size", c.mixture_size);
    count("share_dim", c.share_dim);
    if (j.contains("threads")) {
        c.threads = j.at("threads").get<std::size_t>();
    }
    if (j.contains("seed")) {
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("initial_step")) {
        c.initial_step = j.at("initial_step").get<double>();
    }
    if (j.contains("decay")) {
        c.decay = j.at("decay").get<double>();
    }
    if (j.contains("mixed_shares")) {
        c.mixed_shares = j.at("mixed_shares").get<bool>();
    }
    c.validate();
    return c;
}

Json attack_report_to_json(const AttackReport &r) {
    Json j;
    j["min_I"] = r.min_value;
    j["restart_minima"] = r.restart_minima;
    j["evals"] = r.evaluations;
    j["seed"] = r.seed;
    j["config"] = attack_config_to_json(r.config);
    j["best_restart"] = r.best_restart;
    j["inexact_decomposition"] = r.inexact_decomposition;
    if (r.best) {
        j["best_strategy"] = strategy_to_json(*r.best);
    }
    return j;
}

}  // namespace mdiw
