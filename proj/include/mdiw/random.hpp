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

#ifndef MDIW_RANDOM_HPP
#define MDIW_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "mdiw/linalg.hpp"

namespace mdiw {

using Rng = std::mt19937_64;

/// One SplitMix64 step: golden-ratio increment, then the finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream `index` derived from `master`:
///   seed = splitmix64(master ^ splitmix64(index + 0x9E3779B97F4A7C15))
/// and the stream is a std::mt19937_64 seeded with that value.
Rng derive_stream(std::uint64_t master, std::uint64_t index);

double standard_normal(Rng &rng);
double uniform01(Rng &rng);

/// Haar-random unit vector (normalized complex Gaussian).
ComplexVector random_pure_state(std::size_t dim, Rng &rng);

/// G G^dagger / tr for a dim x rank complex Gaussian G.
ComplexMatrix random_density_matrix(std::size_t dim, std::size_t rank, Rng &rng);

/// Hermitian matrix with i.i.d. Gaussian real/imaginary parts.
ComplexMatrix random_hermitian(std::size_t dim, Rng &rng);

/// E = G^dagger G / (||G^dagger G||_op (1 + eps)), eps ~ U[0,1].
ComplexMatrix random_povm_element(std::size_t dim, Rng &rng);

/// Uniform sample from the probability simplex (normalized exponentials).
std::vector<double> random_simplex(std::size_t k, Rng &rng);

}  // namespace mdiw

#endif
