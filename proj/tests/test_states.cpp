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

#include "mdiw/states.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace mdiw;

namespace {

double dot(const BlochVector &a, const BlochVector &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

TEST(states, pauli_algebra) {
    for (int k = 1; k <= 3; ++k) {
        ASSERT_LT(frobenius_distance(pauli(k) * pauli(k), pauli(0)), 1e-15);
        ASSERT_EQ(std::abs(pauli(k).trace()), 0.0);
    }
    // XY = iZ.
    ASSERT_LT(frobenius_distance(pauli(1) * pauli(2), Complex(0, 1) * pauli(3)), 1e-15);
    ASSERT_THROW(pauli(4), std::out_of_range);
    ASSERT_THROW(pauli(-1), std::out_of_range);
}

TEST(states, density_matrix_validation) {
    ASSERT_NO_THROW(DensityMatrix(Complex(0.5) * ComplexMatrix::identity(2)));
    ASSERT_THROW(DensityMatrix(ComplexMatrix::identity(2)), InvalidState);
    ASSERT_THROW(DensityMatrix(ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5})), InvalidState);
    ASSERT_THROW(DensityMatrix(Complex(0.25) * ComplexMatrix::identity(4), DimsProfile{2, 3}), DimensionError);
    const DensityMatrix rho(Complex(0.25) * ComplexMatrix::identity(4), DimsProfile{2, 2});
    ASSERT_EQ(rho.dims(), DimsProfile({2, 2}));
    ASSERT_EQ(DensityMatrix(Complex(0.5) * ComplexMatrix::identity(2)).dims(), DimsProfile({2}));
}

TEST(states, bloch_round_trip) {
    const BlochVector n{0.3, -0.4, 0.5};
    const auto back = bloch_vector(bloch_state(n).matrix());
    for (int k = 0; k < 3; ++k) {
        ASSERT_NEAR(back[k], n[k], 1e-15);
    }
    ASSERT_THROW(bloch_state({1.0, 1.0, 0.0}), InvalidState);
    const auto pure = hermitian_eigenvalues(bloch_state({0.0, 0.0, 1.0}).matrix());
    ASSERT_NEAR(pure[0], 0.0, 1e-15);
    ASSERT_NEAR(pure[1], 1.0, 1e-15);
}

TEST(states, tetrahedron) {
    const InputEnsemble e = tetrahedron_ensemble();
    ASSERT_EQ(e.name(), "tetrahedron");
    ASSERT_EQ(e.labels(), (std::vector<std::string>{"0", "1", "2", "3"}));
    const double c = 1.0 / std::sqrt(3.0);
    // sigma_k conjugation flips the two Bloch components other than k.
    const std::array<BlochVector, 4> expected{
        BlochVector{c, c, c}, BlochVector{c, -c, -c}, BlochVector{-c, c, -c}, BlochVector{-c, -c, c}};
    for (std::size_t s = 0; s < 4; ++s) {
        const auto n = bloch_vector(e[s].state.matrix());
        ASSERT_NEAR(dot(n, n), 1.0, 1e-14);
        for (int k = 0; k < 3; ++k) {
            ASSERT_NEAR(n[k], expected[s][k], 1e-15);
        }
        for (std::size_t t = 0; t < s; ++t) {
            ASSERT_NEAR(dot(n, bloch_vector(e[t].state.matrix())), -1.0 / 3.0, 1e-14);
        }
    }
    ComplexMatrix sum(2, 2);
    for (const auto &m : e.members()) {
        sum += m.state.matrix();
    }
    ASSERT_LT(frobenius_distance(sum, Complex(2) * ComplexMatrix::identity(2)), 1e-14);
}

TEST(states, pauli6) {
    const InputEnsemble e = pauli6_ensemble();
    ASSERT_EQ(e.labels(), (std::vector<std::string>{"+x", "+y", "+z", "-x", "-y", "-z"}));
    for (std::size_t s = 0; s < 6; ++s) {
        const auto n = bloch_vector(e[s].state.matrix());
        const double sign = s < 3 ? 1.0 : -1.0;
        for (std::size_t k = 0; k < 3; ++k) {
            ASSERT_NEAR(n[k], k == s % 3 ? sign : 0.0, 1e-15);
        }
    }
    ASSERT_EQ(ensemble_by_name("pauli6").labels(), e.labels());
    ASSERT_THROW(ensemble_by_name("octahedron"), std::invalid_argument);
}

TEST(states, ensemble_checks) {
    const DensityMatrix q(Complex(0.5) * ComplexMatrix::identity(2));
    const DensityMatrix r(Complex(1.0 / 3) * ComplexMatrix::identity(3));
    ASSERT_THROW(InputEnsemble("e", {}), std::invalid_argument);
    ASSERT_THROW(InputEnsemble("e", {{"a", q}, {"a", q}}), std::invalid_argument);
    ASSERT_THROW(InputEnsemble("e", {{"a", q}, {"b", r}}), DimensionError);
}

TEST(states, werner) {
    for (double v : {0.0, 0.25, 1.0 / 3.0, 0.5, 1.0}) {
        const auto ev = hermitian_eigenvalues(werner_state(v).matrix());
        ASSERT_NEAR(ev[0], (1 - v) / 4, 1e-14);
        ASSERT_NEAR(ev[2], (1 - v) / 4, 1e-14);
        ASSERT_NEAR(ev[3], (1 + 3 * v) / 4, 1e-14);
    }
    ASSERT_EQ(werner_state(0.5).dims(), DimsProfile({2, 2}));
    ASSERT_THROW(werner_state(1.5), std::invalid_argument);
    ASSERT_THROW(werner_state(-0.1), std::invalid_argument);
}

TEST(states, noisy_ghz) {
    const DensityMatrix rho = noisy_ghz(0.6);
    ASSERT_EQ(rho.dims(), DimsProfile({2, 2, 2}));
    ASSERT_NEAR(rho.matrix()(0, 7).real(), 0.3, 1e-15);
    ASSERT_NEAR(rho.matrix()(0, 0).real(), 0.3 + 0.4 / 8, 1e-15);
    ASSERT_NEAR(rho.matrix()(3, 3).real(), 0.4 / 8, 1e-15);
    ASSERT_THROW(noisy_ghz(2.0), std::invalid_argument);
}

TEST(states, max_entangled) {
    const auto phi = max_entangled(3);
    ASSERT_EQ(phi.size(), 9u);
    const ComplexMatrix p = ComplexMatrix::projector(phi);
    const ComplexMatrix marginal = partial_trace(p, DimsProfile{3, 3}, {0});
    ASSERT_LT(frobenius_distance(marginal, Complex(1.0 / 3) * ComplexMatrix::identity(3)), 1e-15);
    ASSERT_THROW(max_entangled(1), std::invalid_argument);
}
