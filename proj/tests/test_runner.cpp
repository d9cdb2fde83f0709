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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "mdiw/acceptance.hpp"
#include "mdiw/commands.hpp"

using namespace mdiw;

namespace {

std::string config_path(const std::string &name) { return std::string(MDIW_CONFIG_DIR) + "/" + name; }

ScenarioConfig load(const std::string &name) { return load_config(config_path(name)); }

std::vector<std::vector<std::string>> parse_csv(const std::string &csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        rows.push_back(cells);
    }
    return rows;
}

ScenarioConfig quick_attack(ScenarioConfig c) {
    c.attack.restarts = 4;
    c.attack.iterations = 40;
    return c;
}

}  // namespace

TEST(runner, config_round_trip) {
    for (const auto &entry : std::filesystem::directory_iterator(MDIW_CONFIG_DIR)) {
        const ScenarioConfig c = load_config(entry.path().string());
        ASSERT_EQ(parse_config(serialize_config(c)), c) << entry.path();
        ASSERT_EQ(serialize_config(parse_config(serialize_config(c))).dump(), serialize_config(c).dump());
    }

    ScenarioConfig c;
    c.parties = 2;
    c.witness = "explicit";
    c.witness_matrix = singlet_witness().matrix();
    c.ensembles = {EnsembleSpec{"tetrahedron", {}},
                   EnsembleSpec{"zbasis", {{"up", pauli(0) * 0.5 + pauli(3) * 0.5}, {"down", pauli(0) * 0.5 - pauli(3) * 0.5}}}};
    c.state = StateSpec{"explicit", 0.0, werner_state(0.123456789012345678).matrix()};
    c.decomposition = "solve";
    c.loss = {0.3, 1.0 / 3.0};
    c.attack.seed = 0xFFFFFFFFFFFFFFFFULL;
    c.attack.initial_step = 0.1 + 1e-17;
    c.attack_mode = AttackMode::separable;
    c.expect = Expectation::violable;
    c.full_outcomes = true;
    const ScenarioConfig back = parse_config_text(serialize_config(c).dump());
    ASSERT_EQ(back, c);
}

TEST(runner, config_errors) {
    ASSERT_THROW(parse_config_text("{"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"parties": 4})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"witnes": "singlet"})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"witness": "bell"})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"ensembles": ["cube"]})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"ensembles": ["pauli6", "pauli6", "pauli6"]})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"state": {"family": "werner", "v": 1.5}})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"state": {"family": "isotropic"}})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"loss": [0.5]})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"loss": [0.0, 1.0]})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"decomposition": "guess"})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"attack": {"restarts": 0}})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"attack": {"decay": 1.5}})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"attack": {"mode": "entangled"}})"), ConfigError);
    ASSERT_THROW(parse_config_text(R"({"expect": "maybe"})"), ConfigError);
    ASSERT_THROW(load_config(config_path("missing.json")), ConfigError);

    // Parses, but the witness does not fit the inputs.
    const auto bad = load("bad_dims.json");
    ASSERT_THROW(cmd_decompose(bad), ConfigError);
    auto ghz_on_pairs = parse_config_text(R"({"parties": 2, "witness": "ghz"})");
    ASSERT_THROW(resolve_witness(ghz_on_pairs), ConfigError);
    auto no_catalog = parse_config_text(R"({"ensembles": ["tetrahedron", "pauli6"]})");
    ASSERT_THROW(resolve_decomposition(no_catalog), ConfigError);
    no_catalog.decomposition = "solve";
    ASSERT_TRUE(resolve_decomposition(no_catalog).exact());
    ASSERT_THROW(cmd_simulate(parse_config_text("{}")), ConfigError);
}

TEST(runner, seed_from_environment) {
    ScenarioConfig c = load("attack_separable.json");
    ::setenv("MDIW_SEED", "12345", 1);
    apply_environment(c);
    ASSERT_EQ(c.attack.seed, 12345u);
    ::setenv("MDIW_SEED", "12x", 1);
    ASSERT_THROW(apply_environment(c), ConfigError);
    ::unsetenv("MDIW_SEED");
    apply_environment(c);
    ASSERT_EQ(c.attack.seed, 12345u);
}

TEST(runner, decompose) {
    const auto table = cmd_decompose(load("werner.json"));
    ASSERT_EQ(table.exit_code, EXIT_OK);
    const auto j = Json::parse(table.json);
    ASSERT_LT(j.at("residual").get<double>(), 1e-10);
    ASSERT_EQ(j.at("beta")[1][1].get<double>(), 5.0 / 8.0);
    ASSERT_EQ(j.at("beta")[0][3].get<double>(), -1.0 / 8.0);
    ASSERT_EQ(j.at("ensembles")[0], "tetrahedron");

    const auto solved = cmd_decompose(load("pauli6_solve.json"));
    ASSERT_EQ(solved.exit_code, EXIT_OK);
    ASSERT_LT(Json::parse(solved.json).at("residual").get<double>(), 1e-10);
    ASSERT_EQ(Json::parse(solved.json).at("beta").size(), 6u);

    const auto ghz = Json::parse(cmd_decompose(load("ghz.json")).json);
    ASSERT_EQ(ghz.at("beta")[0][0].size(), 4u);
    ASSERT_TRUE(ghz.at("table_exact").get<bool>());

    // Inputs that do not span the operator space: residual above tolerance.
    auto z = parse_config_text(R"({"decomposition": "solve", "ensembles": [{"name": "z", "states": [
        {"label": "up", "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
        {"label": "down", "matrix": [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]}]}]})");
    ASSERT_EQ(cmd_decompose(z).exit_code, EXIT_FAILED);
}

TEST(runner, simulate) {
    auto c = load("werner.json");
    auto out = cmd_simulate(c);
    auto j = Json::parse(out.json);
    ASSERT_NEAR(j.at("I").get<double>(), -0.125, 1e-15);
    ASSERT_EQ(j.at("expected").get<double>(), -0.125);
    ASSERT_NEAR(j.at("witness_value_scaled").get<double>(), -0.125, 1e-15);
    const auto rows = parse_csv(out.csv);
    ASSERT_EQ(rows.size(), 17u);
    ASSERT_EQ(rows[0], (std::vector<std::string>{"A", "B", "p_all_ones"}));

    c.state->v = 1.0 / 3.0;
    ASSERT_NEAR(Json::parse(cmd_simulate(c).json).at("I").get<double>(), 0.0, 1e-12);

    const auto g = Json::parse(cmd_simulate(load("ghz.json")).json);
    ASSERT_NEAR(g.at("I").get<double>(), -0.0625, 1e-14);
    ASSERT_EQ(g.at("expected").get<double>(), -0.0625);

    const auto lossy = Json::parse(cmd_simulate(load("werner_lossy.json")).json);
    ASSERT_NEAR(lossy.at("I").get<double>(), -0.125 * 0.25, 1e-15);
    ASSERT_EQ(lossy.at("expected").get<double>(), -0.125 * 0.25);
    ASSERT_EQ(lossy.at("loss_convention"), "outcome0-folding");

    c.full_outcomes = true;
    const auto full = parse_csv(cmd_simulate(c).csv);
    ASSERT_EQ(full[0].size(), 7u);

    // Explicit state: no closed form is claimed.
    auto e = load("werner.json");
    e.state = StateSpec{"explicit", 0.0, werner_state(0.5).matrix()};
    const auto ej = Json::parse(cmd_simulate(e).json);
    ASSERT_TRUE(ej.at("expected").is_null());
    ASSERT_NEAR(ej.at("I").get<double>(), (1 - 1.5) / 16, 1e-15);
}

TEST(runner, scan) {
    const auto c = load("werner.json");
    const auto out = cmd_scan(c, 0.0, 1.0, 11);
    const auto rows = parse_csv(out.csv);
    ASSERT_EQ(rows.size(), 12u);
    ASSERT_EQ(rows[0], (std::vector<std::string>{"v", "I", "expected", "abs_err"}));
    double worst = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_EQ(std::stod(rows[i][0]), (i - 1) / 10.0);
        worst = std::max(worst, std::stod(rows[i][3]));
    }
    ASSERT_LT(worst, 1e-12);
    ASSERT_NEAR(Json::parse(out.json).at("zero_crossing").get<double>(), 1.0 / 3.0, 1e-10);

    const auto lossy = parse_csv(cmd_scan(load("werner_lossy.json"), 0.0, 1.0, 11).csv);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_NEAR(std::stod(lossy[i][1]), 0.25 * std::stod(rows[i][1]), 1e-16);
    }

    const auto g = cmd_scan(load("ghz.json"), 0.0, 1.0, 101);
    const auto grows = parse_csv(g.csv);
    bool bracketed = false;
    for (std::size_t i = 2; i < grows.size(); ++i) {
        const double v0 = std::stod(grows[i - 1][0]), v1 = std::stod(grows[i][0]);
        const double i0 = std::stod(grows[i - 1][1]), i1 = std::stod(grows[i][1]);
        if (i0 > 0 && i1 <= 0) {
            bracketed = v0 < 3.0 / 7.0 && 3.0 / 7.0 <= v1;
        }
    }
    ASSERT_TRUE(bracketed);
    ASSERT_NEAR(Json::parse(g.json).at("zero_crossing").get<double>(), 3.0 / 7.0, 1e-10);

    ASSERT_THROW(cmd_scan(c, 0.5, 0.5, 11), ConfigError);
    ASSERT_THROW(cmd_scan(c, 0.0, 1.0, 1), ConfigError);
    ASSERT_THROW(cmd_scan(c, 0.0, 1.5, 5), ConfigError);
}

TEST(runner, attack_outcomes_and_determinism) {
    const auto c = quick_attack(load("attack_separable.json"));
    const auto first = cmd_attack(c);
    ASSERT_EQ(first.exit_code, EXIT_OK);
    ASSERT_EQ(cmd_attack(c).json, first.json);
    const auto j = Json::parse(first.json);
    ASSERT_GE(j.at("min_I").get<double>(), -1e-9);
    ASSERT_EQ(j.at("restart_minima").size(), 4u);
    ASSERT_EQ(j.at("evals").get<std::uint64_t>(), 4u * 41u);
    ASSERT_EQ(j.at("config").at("seed"), c.attack.seed);
    ASSERT_EQ(attack_config_from_json(j.at("config")), c.attack);

    const auto b = cmd_attack(quick_attack(load("attack_biseparable.json")));
    ASSERT_EQ(b.exit_code, EXIT_OK);
    ASSERT_EQ(Json::parse(b.json).at("best_strategy").at("type"), "biseparable");

    auto power = load("power_check.json");
    power.attack.restarts = 10;
    power.attack.iterations = 300;
    const auto p = cmd_attack(power);
    ASSERT_EQ(p.exit_code, EXIT_OK);
    ASSERT_LT(Json::parse(p.json).at("min_I").get<double>(), -0.2);
    // The same search under a bound expectation reports the violation as a failure.
    power.expect = Expectation::bound;
    ASSERT_EQ(cmd_attack(power).exit_code, EXIT_FAILED);

    auto wrong_mode = c;
    wrong_mode.attack_mode = AttackMode::biseparable;
    ASSERT_THROW(cmd_attack(wrong_mode), ConfigError);
}

TEST(runner, acceptance_subset_is_deterministic) {
    const std::vector<int> quick{1, 2, 3, 4, 8, 10};
    const auto fixtures = AcceptanceFixtures::standard();
    const auto a = run_acceptance(fixtures, quick);
    const auto b = run_acceptance(fixtures, quick);
    ASSERT_EQ(a.size(), quick.size());
    for (const auto &r : a) {
        ASSERT_TRUE(r.passed) << verdict_line(r);
    }
    ASSERT_EQ(verdicts_to_json(a).dump(), verdicts_to_json(b).dump());
    ASSERT_TRUE(verdicts_to_json(a).at("all_passed").get<bool>());
}

TEST(runner, corrupted_coefficient_fails_named_criterion) {
    auto fixtures = AcceptanceFixtures::standard();
    std::vector<double> beta(fixtures.tetrahedron.beta().begin(), fixtures.tetrahedron.beta().end());
    beta[5] = 0.6;  // 5/8 in the table
    fixtures.tetrahedron = fixtures.tetrahedron.with_beta(beta, 0.0, "corrupted");
    const std::vector<int> ids{1, 3, 4};
    const auto results = run_acceptance(fixtures, ids);
    ASSERT_FALSE(results[0].passed);
    ASSERT_EQ(results[1].id, 3);
    ASSERT_EQ(results[1].name, "catalog decompositions reconstruct");
    ASSERT_FALSE(results[1].passed);
    ASSERT_TRUE(results[2].passed);
    const auto j = verdicts_to_json(results);
    ASSERT_FALSE(j.at("all_passed").get<bool>());
    ASSERT_EQ(j.at("criteria")[1].at("name"), "catalog decompositions reconstruct");
    ASSERT_EQ(verdict_line(results[1]).substr(0, 8), "FAIL [3]");
}

TEST(runner, expected_values) {
    auto c = load("werner.json");
    ASSERT_EQ(*expected_value(c, 1.0), -0.125);
    c.witness = "ghz";
    ASSERT_FALSE(expected_value(c, 1.0).has_value());
    auto g = load("ghz.json");
    ASSERT_NEAR(*expected_value(g, 3.0 / 7.0), 0.0, 1e-17);
}
