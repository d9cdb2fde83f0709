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

#include "mdiw/commands.hpp"

#include <cmath>
#include <sstream>

#include "mdiw/acceptance.hpp"

namespace mdiw {

namespace {

double efficiency_product(const ScenarioConfig &c) {
    double prod = 1.0;
    for (double eta : c.loss) {
        prod *= eta;
    }
    return prod;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

}  // namespace

std::optional<double> expected_value(const ScenarioConfig &c, double v) {
    if (!c.state || c.witness_matrix) {
        return std::nullopt;
    }
    if (c.witness == "singlet" && c.state->family == "werner") {
        return (1.0 - 3.0 * v) / 16.0 * efficiency_product(c);
    }
    if (c.witness == "ghz" && c.state->family == "noisy_ghz") {
        return (3.0 - 7.0 * v) / 64.0 * efficiency_product(c);
    }
    return std::nullopt;
}

CommandOutput cmd_decompose(const ScenarioConfig &c) {
    const Decomposition dec = resolve_decomposition(c);
    Json j = decomposition_to_json(dec);
    if (c.witness == "ghz" && c.decomposition == "catalog") {
        const auto both = ghz_decompositions();
        j["table_residual"] = both.table.residual();
        j["table_exact"] = both.table_exact();
    }
    return {dec.exact() ? EXIT_OK : EXIT_FAILED, dump(j), ""};
}

CommandOutput cmd_simulate(const ScenarioConfig &c) {
    const Decomposition dec = resolve_decomposition(c);
    const Witness w = resolve_witness(c);
    const DensityMatrix rho = resolve_state(c);

    CorrelationTable table = c.full_outcomes ? simulate_entangled(bell_strategy(rho), dec.ensembles(), true)
                                             : bell_strategy_table(rho, dec.ensembles());
    if (!c.loss.empty()) {
        table = apply_uniform_loss(table, c.loss);
    }
    const double value = mdi_value(dec, table);

    double scaled = witness_value(w, rho) / static_cast<double>(w.dims().total());
    scaled *= efficiency_product(c);

    Json j;
    j["I"] = value;
    const auto expected = expected_value(c, c.state->v);
    j["expected"] = expected ? Json(*expected) : Json(nullptr);
    j["witness_value_scaled"] = scaled;
    j["decomposition_exact"] = dec.exact();
    if (!table.loss_convention().empty()) {
        j["loss_convention"] = table.loss_convention();
    }
    return {EXIT_OK, dump(j), table.to_csv()};
}

CommandOutput cmd_scan(const ScenarioConfig &c, double from, double to, std::size_t steps) {
    if (!(from >= 0.0 && from < to && to <= 1.0) || steps < 2) {
        throw ConfigError("scan: need 0 <= from < to <= 1 and steps >= 2");
    }
    const Decomposition dec = resolve_decomposition(c);
    const StateFamily family = resolve_family(c);
    // Evaluated once up front so that dims errors surface as config errors.
    resolve_state(c);

    std::vector<double> grid(steps);
    const double last = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i);
        grid[i] = (from * (last - t) + to * t) / last;
    }
    const auto curve = violation_scan(family, dec, grid, c.loss);

    std::ostringstream csv;
    csv << "v,I,expected,abs_err\n";
    double max_err = 0.0;
    bool any_expected = false;
    for (const auto &pt : curve) {
        csv << format_double(pt.parameter) << ',' << format_double(pt.value) << ',';
        if (const auto e = expected_value(c, pt.parameter)) {
            const double err = std::abs(pt.value - *e);
            max_err = std::max(max_err, err);
            any_expected = true;
            csv << format_double(*e) << ',' << format_double(err);
        } else {
            csv << ',';
        }
        csv << '\n';
    }

    Json j;
    j["points"] = curve.size();
    const auto zero = zero_crossing(curve);
    j["zero_crossing"] = zero ? Json(*zero) : Json(nullptr);
    j["max_abs_err"] = any_expected ? Json(max_err) : Json(nullptr);
    return {EXIT_OK, dump(j), csv.str()};
}

CommandOutput cmd_attack(const ScenarioConfig &c) {
    const Decomposition dec = resolve_decomposition(c);
    if (c.attack_mode == AttackMode::biseparable && dec.parties() != 3) {
        throw ConfigError("attack: biseparable mode needs three parties");
    }
    const AttackReport report =
        c.attack_mode == AttackMode::separable ? attack(dec, c.attack) : biseparable_attack(dec, c.attack);
    Json j = attack_report_to_json(report);
    j["mode"] = c.attack_mode == AttackMode::separable ? "separable" : "biseparable";
    j["expect"] = c.expect == Expectation::bound ? "bound" : "violable";
    const bool ok = c.expect == Expectation::bound ? report.min_value >= -BOUND_TOL : report.min_value < 0.0;
    j["passed"] = ok;
    return {ok ? EXIT_OK : EXIT_FAILED, dump(j), ""};
}

CommandOutput cmd_verify() {
    const auto results = run_acceptance(AcceptanceFixtures::standard());
    const Json j = verdicts_to_json(results);
    return {j.at("all_passed").get<bool>() ? EXIT_OK : EXIT_FAILED, dump(j), ""};
}

}  // namespace mdiw
