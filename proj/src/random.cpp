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

#include "mdiw/random.hpp"

#include <cmath>

namespace mdiw {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng derive_stream(std::uint64_t master, std::uint64_t index) {
    return Rng(splitmix64(master ^ splitmix64(index + 0x9E3779B97F4A7C15ULL)));
}

double standard_normal(Rng &rng) {
    return std::normal_distribution<double>(0.0, 1.0)(rng);
}

double uniform01(Rng &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

ComplexVector random_pure_state(std::size_t dim, Rng &rng) {
    ComplexVector v(dim);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto &z : v) {
            z = Complex(standard_normal(rng), standard_normal(rng));
            norm2 += std::norm(z);
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &z : v) {
        z *= inv;
    }
    return v;
}

ComplexMatrix random_density_matrix(std::size_t dim, std::size_t rank, Rng &rng) {
    ComplexMatrix g(dim, rank);
    for (auto &z : g.entries()) {
        z = Complex(standard_normal(rng), standard_normal(rng));
    }
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

ComplexMatrix random_hermitian(std::size_t dim, Rng &rng) {
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = standard_normal(rng);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const Complex z(standard_normal(rng), standard_normal(rng));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

ComplexMatrix random_povm_element(std::size_t dim, Rng &rng) {
    ComplexMatrix g(dim, dim);
    for (auto &z : g.entries()) {
        z = Complex(standard_normal(rng), standard_normal(rng));
    }
    ComplexMatrix e = g.adjoint() * g;
    const double eps = uniform01(rng);
    e *= 1.0 / (operator_norm_hermitian(e) * (1.0 + eps));
    return e;
}

std::vector<double> random_simplex(std::size_t k, Rng &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(k);
    double total = 0.0;
    do {
        total = 0.0;
        for (auto &x : w) {
            x = expo(rng);
            total += x;
        }
    } while (total == 0.0);
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

}  // namespace mdiw
