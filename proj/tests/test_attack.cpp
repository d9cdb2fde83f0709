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

#include "mdiw/attack.hpp"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"

using namespace mdiw;

namespace {

AttackConfig small_config() {
    AttackConfig c;
    c.restarts = 6;
    c.iterations = 60;
    c.mixture_size = 2;
    c.share_dim = 2;
    c.seed = 99;
    return c;
}

Decomposition negated_singlet() {
    ComplexMatrix neg = ComplexMatrix::projector(singlet_vector());
    neg *= -1.0;
    const auto e = tetrahedron_ensemble();
    return decompose(Witness(neg, DimsProfile{2, 2}, WitnessKind::bipartite_separability), {e, e});
}

}  // namespace

TEST(attack, config_validation) {
    AttackConfig c;
    ASSERT_NO_THROW(c.validate());
    c.restarts = 0;
    ASSERT_THROW(c.validate(), std::invalid_argument);
    c = AttackConfig{};
    c.decay = 1.0;
    ASSERT_THROW(c.validate(), std::invalid_argument);
    c.decay = 0.0;
    ASSERT_THROW(c.validate(), std::invalid_argument);
    c = AttackConfig{};
    c.share_dim = 0;
    ASSERT_THROW(attack(tetrahedron_beta(), c), std::invalid_argument);
}

TEST(attack, stream_derivation) {
    Rng a = derive_stream(1, 0);
    Rng b = derive_stream(1, 0);
    Rng c = derive_stream(1, 1);
    Rng d = derive_stream(2, 0);
    const auto x = a();
    ASSERT_EQ(x, b());
    ASSERT_NE(x, c());
    ASSERT_NE(x, d());
    ASSERT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(attack, random_strategies_are_valid) {
    const std::array<std::size_t, 2> dims{2, 2};
    for (std::uint64_t i = 0; i < 10000; ++i) {
        Rng rng = derive_stream(5, i);
        const ComplexMatrix e = random_povm_element(4, rng);
        const auto ev = hermitian_eigenvalues(e);
        ASSERT_GE(ev.front(), -TOL_PSD);
        ASSERT_LE(ev.back(), 1.0 + TOL_PSD);
    }
    Rng rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        const auto s = random_separable_strategy(dims, 1 + rep % 3, 1 + rep % 4, rng, rep % 2 == 0);
        double total = 0.0;
        for (const auto &t : s.terms()) {
            ASSERT_GE(t.weight, 0.0);
            total += t.weight;
        }
        ASSERT_NEAR(total, 1.0, 1e-12);
    }
    const std::array<std::size_t, 3> dims3{2, 2, 2};
    const auto b = random_biseparable_strategy(dims3, 2, 5, rng);
    ASSERT_EQ(b.terms().size(), 5u);
    ASSERT_THROW(random_biseparable_strategy(dims, 2, 2, rng), std::invalid_argument);
}

TEST(attack, bound_holds_on_witness_decompositions) {
    const auto c = small_config();
    for (const auto &dec : {tetrahedron_beta(), pauli6_beta()}) {
        const auto r = attack(dec, c);
        ASSERT_GE(r.min_value, -1e-9);
        ASSERT_FALSE(r.inexact_decomposition);
    }
    const auto g = biseparable_attack(ghz_beta(), c);
    ASSERT_GE(g.min_value, -1e-9);
    ASSERT_THROW(biseparable_attack(tetrahedron_beta(), c), std::invalid_argument);
}

TEST(attack, report_bookkeeping) {
    auto c = small_config();
    c.record_trace = true;
    const auto r = attack(tetrahedron_beta(), c);
    ASSERT_EQ(r.restart_minima.size(), c.restarts);
    ASSERT_EQ(r.min_value, *std::min_element(r.restart_minima.begin(), r.restart_minima.end()));
    ASSERT_EQ(r.restart_minima[r.best_restart], r.min_value);
    ASSERT_EQ(r.evaluations, c.restarts * (c.iterations + 1));
    ASSERT_EQ(r.seed, c.seed);
    ASSERT_TRUE(r.best.has_value());
    ASSERT_EQ(r.traces.size(), c.restarts);
    for (std::size_t k = 0; k < r.traces.size(); ++k) {
        const auto &trace = r.traces[k];
        ASSERT_EQ(trace.size(), c.iterations + 1);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            ASSERT_LE(trace[i], trace[i - 1]);
        }
        ASSERT_EQ(trace.back(), r.restart_minima[k]);
    }
    // The snapshot evaluates to the reported minimum.
    const auto &best = std::get<SeparableStrategy>(*r.best);
    const auto dec = tetrahedron_beta();
    ASSERT_NEAR(mdi_value(dec, simulate_separable(best, dec.ensembles())), r.min_value, 1e-14);
}

TEST(attack, deterministic_across_thread_counts) {
    auto c = small_config();
    c.threads = 1;
    const auto one = attack(tetrahedron_beta(), c);
    c.threads = 3;
    const auto three = attack(tetrahedron_beta(), c);
    ASSERT_EQ(one.restart_minima, three.restart_minima);
    ASSERT_EQ(one.min_value, three.min_value);
    ASSERT_EQ(one.best_restart, three.best_restart);
    c.seed = 100;
    ASSERT_NE(attack(tetrahedron_beta(), c).restart_minima, one.restart_minima);
}

TEST(attack, finds_violation_of_non_witness) {
    auto c = small_config();
    c.restarts = 10;
    c.iterations = 300;
    const auto r = attack(negated_singlet(), c);
    ASSERT_LT(r.min_value, -0.2);
    ASSERT_GE(r.min_value, -1.0 - 1e-9);
}

TEST(attack, flags_inexact_decomposition) {
    const auto d = tetrahedron_beta();
    std::vector<double> beta(d.beta().begin(), d.beta().end());
    beta[0] -= 1.0;
    const auto r = attack(d.with_beta(beta, 1.0, "test"), small_config());
    ASSERT_TRUE(r.inexact_decomposition);
}

TEST(attack, violation_scan_and_crossing) {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) {
        grid.push_back(i / 10.0);
    }
    const auto curve = violation_scan(werner_state, tetrahedron_beta(), grid);
    ASSERT_EQ(curve.size(), grid.size());
    for (const auto &pt : curve) {
        ASSERT_NEAR(pt.value, (1 - 3 * pt.parameter) / 16, 1e-12);
    }
    const auto zero = zero_crossing(curve);
    ASSERT_TRUE(zero.has_value());
    ASSERT_NEAR(*zero, 1.0 / 3.0, 1e-10);

    const std::array<double, 2> eta{0.5, 0.5};
    const auto lossy = violation_scan(werner_state, tetrahedron_beta(), grid, eta);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ASSERT_NEAR(lossy[i].value, 0.25 * curve[i].value, 1e-16);
    }

    const auto ghz = violation_scan(noisy_ghz, ghz_beta(), grid);
    ASSERT_NEAR(*zero_crossing(ghz), 3.0 / 7.0, 1e-10);
}

TEST(attack, zero_crossing_edge_cases) {
    const std::vector<ScanPoint> positive{{0.0, 1.0}, {1.0, 0.5}};
    ASSERT_FALSE(zero_crossing(positive).has_value());
    const std::vector<ScanPoint> exact{{0.0, 1.0}, {0.5, 0.0}, {1.0, -1.0}};
    ASSERT_EQ(*zero_crossing(exact), 0.5);
    const std::vector<ScanPoint> linear{{0.0, 1.0}, {1.0, -3.0}};
    ASSERT_NEAR(*zero_crossing(linear), 0.25, 1e-15);
}

TEST(attack, kraus_sets_are_trace_nonincreasing) {
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        const auto kraus = random_trace_nonincreasing_kraus(4, 1 + rep % 3, rng);
        ComplexMatrix sum(4, 4);
        for (const auto &k : kraus) {
            sum += k.adjoint() * k;
        }
        ASSERT_LE(hermitian_eigenvalues(sum).back(), 1.0 + 1e-12);
    }
}
