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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mdiw/acceptance.hpp"
#include "mdiw/commands.hpp"

namespace {

bool write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement witness games with untrusted measurement devices"};
    app.require_subcommand(1);

    std::string config_path, out_path, table_path;
    double from = 0.0, to = 1.0;
    std::size_t steps = 101;

    auto *decompose = app.add_subcommand("decompose", "Decompose the witness over the input ensembles");
    auto *simulate = app.add_subcommand("simulate", "Bell-strategy correlation table and I(P)");
    auto *scan = app.add_subcommand("scan", "I(P) along the state family's parameter");
    auto *attack = app.add_subcommand("attack", "Search separable or biseparable strategies for I(P) < 0");
    auto *verify = app.add_subcommand("verify", "Run the acceptance suite");

    for (auto *sub : {decompose, simulate, scan, attack}) {
        sub->add_option("-c,--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--out", out_path, "Write the JSON document here instead of stdout");
    }
    verify->add_option("-o,--out", out_path, "Write the JSON document here instead of stdout");
    for (auto *sub : {simulate, scan}) {
        sub->add_option("--table", table_path, "Write the CSV here (default: stdout, JSON to stderr)");
    }
    scan->add_option("--from", from, "First parameter value");
    scan->add_option("--to", to, "Last parameter value");
    scan->add_option("--steps", steps, "Number of grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mdiw::EXIT_CONFIG;
    }

    mdiw::CommandOutput result;
    try {
        if (verify->parsed()) {
            const auto results = mdiw::run_acceptance(mdiw::AcceptanceFixtures::standard());
            for (const auto &r : results) {
                std::cerr << mdiw::verdict_line(r) << "\n";
            }
            const auto j = mdiw::verdicts_to_json(results);
            result = {j.at("all_passed").get<bool>() ? mdiw::EXIT_OK : mdiw::EXIT_FAILED, j.dump(2) + "\n", ""};
        } else {
            mdiw::ScenarioConfig config = mdiw::load_config(config_path);
            mdiw::apply_environment(config);
            if (decompose->parsed()) {
                result = mdiw::cmd_decompose(config);
            } else if (simulate->parsed()) {
                result = mdiw::cmd_simulate(config);
            } else if (scan->parsed()) {
                result = mdiw::cmd_scan(config, from, to, steps);
            } else {
                result = mdiw::cmd_attack(config);
            }
        }
    } catch (const mdiw::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return mdiw::EXIT_CONFIG;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return mdiw::EXIT_FAILED;
    }

    // With a CSV on stdout the JSON summary goes to stderr, unless files are named.
    const bool csv_to_stdout = !result.csv.empty() && table_path.empty();
    if (!result.csv.empty() && !table_path.empty() && !write_file(table_path, result.csv)) {
        std::cerr << "error: cannot write " << table_path << "\n";
        return mdiw::EXIT_FAILED;
    }
    if (!out_path.empty()) {
        if (!write_file(out_path, result.json)) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return mdiw::EXIT_FAILED;
        }
    } else if (csv_to_stdout) {
        std::cerr << result.json;
    } else {
        std::cout << result.json;
    }
    if (csv_to_stdout) {
        std::cout << result.csv;
    }
    return result.exit_code;
}
