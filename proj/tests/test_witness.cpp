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

#include "mdiw/witness.hpp"

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "mdiw/random.hpp"

using namespace mdiw;

namespace {

// W as the explicit sum of beta * (tensor of transposed inputs), without
// going through reconstruct().
ComplexMatrix sum_of_terms(const Decomposition &dec) {
    const auto &e = dec.ensembles();
    ComplexMatrix total;
    for (std::size_t s = 0; s < e[0].size(); ++s) {
        for (std::size_t t = 0; t < e[1].size(); ++t) {
            if (dec.parties() == 2) {
                ComplexMatrix term = kron(transpose(e[0][s].state.matrix()), transpose(e[1][t].state.matrix()));
                term *= dec.at({s, t});
                total = total.size() ? total + term : term;
                continue;
            }
            for (std::size_t u = 0; u < e[2].size(); ++u) {
                ComplexMatrix term =
                    kron(kron(transpose(e[0][s].state.matrix()), transpose(e[1][t].state.matrix())),
                         transpose(e[2][u].state.matrix()));
                term *= dec.at({s, t, u});
                total = total.size() ? total + term : term;
            }
        }
    }
    return total;
}

double l2(std::span<const double> x) { return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0)); }

}  // namespace

TEST(witness, singlet_and_ghz_values) {
    const Witness w = singlet_witness();
    ASSERT_EQ(w.parties(), 2u);
    for (double v : {0.0, 1.0 / 3.0, 0.7, 1.0}) {
        ASSERT_NEAR(witness_value(w, werner_state(v)), (1 - 3 * v) / 4, 1e-14);
    }
    const Witness g = ghz_witness();
    ASSERT_EQ(g.parties(), 3u);
    ASSERT_EQ(g.kind(), WitnessKind::genuine_multipartite);
    for (double v : {0.0, 3.0 / 7.0, 1.0}) {
        ASSERT_NEAR(witness_value(g, noisy_ghz(v)), (3 - 7 * v) / 8, 1e-14);
    }
    ASSERT_THROW(witness_value(g, werner_state(0.5)), DimensionError);
}

TEST(witness, construction_checks) {
    ASSERT_THROW(Witness(ComplexMatrix::identity(4), DimsProfile{4}, WitnessKind::bipartite_separability),
                 DimensionError);
    ASSERT_THROW(Witness(ComplexMatrix::identity(4), DimsProfile{2, 3}, WitnessKind::bipartite_separability),
                 DimensionError);
    ComplexMatrix m = ComplexMatrix::identity(4);
    m(0, 1) = 1.0;
    ASSERT_THROW(Witness(m, DimsProfile{2, 2}, WitnessKind::bipartite_separability), std::invalid_argument);
}

TEST(witness, tetrahedron_table) {
    const Decomposition d = tetrahedron_beta();
    ASSERT_EQ(d.shape(), (std::vector<std::size_t>{4, 4}));
    ASSERT_EQ(d.source(), "catalog");
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t t = 0; t < 4; ++t) {
            ASSERT_EQ(d.at({s, t}), s == t ? 5.0 / 8.0 : -1.0 / 8.0);
        }
    }
    ASSERT_TRUE(d.exact());
    ASSERT_LT(frobenius_distance(sum_of_terms(d), singlet_witness().matrix()), 1e-14);
    ASSERT_LT(frobenius_distance(reconstruct(d), singlet_witness().matrix()), 1e-14);
}

TEST(witness, pauli6_table) {
    const Decomposition d = pauli6_beta();
    // +x with +x: 1/3; +x with -x: -1/6; different axes: 0.
    ASSERT_NEAR(d.at({0, 0}), 1.0 / 3.0, 1e-16);
    ASSERT_NEAR(d.at({0, 3}), -1.0 / 6.0, 1e-16);
    ASSERT_EQ(d.at({0, 1}), 0.0);
    ASSERT_NEAR(d.at({5, 5}), 1.0 / 3.0, 1e-16);
    ASSERT_TRUE(d.exact());
    ASSERT_LT(frobenius_distance(sum_of_terms(d), singlet_witness().matrix()), 1e-14);
}

TEST(witness, ghz_table) {
    const Decomposition d = ghz_beta();
    ASSERT_EQ(d.shape(), (std::vector<std::size_t>{4, 4, 4}));
    const double hi = 3.0 * (std::sqrt(3.0) + 1.0) / 32.0;
    const double lo = 3.0 * (std::sqrt(3.0) - 1.0) / 32.0;
    for (double b : d.beta()) {
        const double a = std::abs(b);
        ASSERT_TRUE(std::abs(a - hi) < 1e-15 || std::abs(a - lo) < 1e-15) << b;
    }
    ASSERT_LT(frobenius_distance(sum_of_terms(d), ghz_witness().matrix()), 1e-13);
    const auto both = ghz_decompositions();
    ASSERT_TRUE(both.table_exact());
    ASSERT_FALSE(both.corrected.has_value());
    ASSERT_EQ(both.preferred().beta().size(), 64u);
}

TEST(witness, solve_reconstructs) {
    const Decomposition t = decompose(singlet_witness(), {tetrahedron_ensemble(), tetrahedron_ensemble()});
    ASSERT_EQ(t.source(), "solve");
    ASSERT_TRUE(t.exact());
    // The tetrahedron products form a basis, so the solution is unique.
    const auto table = tetrahedron_beta();
    for (std::size_t k = 0; k < 16; ++k) {
        ASSERT_NEAR(t.beta()[k], table.beta()[k], 1e-12);
    }

    const Decomposition p = decompose(singlet_witness(), {pauli6_ensemble(), pauli6_ensemble()});
    ASSERT_TRUE(p.exact());
    ASSERT_LT(frobenius_distance(sum_of_terms(p), singlet_witness().matrix()), 1e-12);
    // Overcomplete: the solver returns the minimum-norm member of the family.
    ASSERT_LE(l2(p.beta()), l2(pauli6_beta().beta()) + 1e-12);

    const Decomposition mixed = decompose(singlet_witness(), {tetrahedron_ensemble(), pauli6_ensemble()});
    ASSERT_TRUE(mixed.exact());
    ASSERT_EQ(mixed.shape(), (std::vector<std::size_t>{4, 6}));
}

TEST(witness, solve_ghz_matches_table) {
    const auto e = tetrahedron_ensemble();
    const Decomposition d = decompose(ghz_witness(), {e, e, e});
    ASSERT_TRUE(d.exact());
    const auto table = ghz_beta();
    for (std::size_t k = 0; k < 64; ++k) {
        ASSERT_NEAR(d.beta()[k], table.beta()[k], 1e-12);
    }
}

TEST(witness, incomplete_ensemble_is_inexact) {
    const auto full = pauli6_ensemble();
    const InputEnsemble z("z-only", {full[2], full[5]});
    const Decomposition d = decompose(singlet_witness(), {z, z});
    ASSERT_FALSE(d.exact());
    ASSERT_GT(d.residual(), 0.1);
    ASSERT_NEAR(d.residual(), frobenius_distance(reconstruct(d), singlet_witness().matrix()), 1e-12);
}

TEST(witness, decompose_checks) {
    const auto e = tetrahedron_ensemble();
    ASSERT_THROW(decompose(singlet_witness(), {e}), DimensionError);
    ASSERT_THROW(decompose(ghz_witness(), {e, e}), DimensionError);
}

TEST(witness, with_beta_and_indexing) {
    const Decomposition d = tetrahedron_beta();
    ASSERT_EQ(d.flat_index(std::vector<std::size_t>{2, 3}), 11u);
    ASSERT_THROW(d.at({4, 0}), std::out_of_range);
    ASSERT_THROW(d.at({0}), DimensionError);
    std::vector<double> beta(d.beta().begin(), d.beta().end());
    beta[0] += 0.5;
    const Decomposition bad = d.with_beta(beta, 0.5, "test");
    ASSERT_FALSE(bad.exact());
    ASSERT_NEAR(frobenius_distance(reconstruct(bad), singlet_witness().matrix()), 0.5, 1e-12);
    ASSERT_THROW(d.with_beta({1.0}, 0.0, "test"), DimensionError);
}

TEST(witness, hermitian_coordinates_are_isometric) {
    Rng rng(11);
    const ComplexMatrix a = random_hermitian(4, rng);
    const ComplexMatrix b = random_hermitian(4, rng);
    const auto x = hermitian_coordinates(a);
    const auto y = hermitian_coordinates(b);
    ASSERT_EQ(x.size(), 16u);
    ASSERT_NEAR(std::inner_product(x.begin(), x.end(), y.begin(), 0.0), trace_product(a, b).real(), 1e-12);
}
