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

// Runs every acceptance criterion and prints one verdict line each.
// Arguments, if given, restrict the run to those criterion ids.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "mdiw/acceptance.hpp"

int main(int argc, char **argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        only.push_back(std::stoi(argv[i]));
    }
    const auto results = mdiw::run_acceptance(mdiw::AcceptanceFixtures::standard(), only);
    bool ok = true;
    for (const auto &r : results) {
        std::cout << mdiw::verdict_line(r) << std::endl;
        ok = ok && r.passed;
    }
    std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
