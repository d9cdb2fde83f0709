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

#ifndef MDIW_ATTACK_HPP
#define MDIW_ATTACK_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "mdiw/game.hpp"
#include "mdiw/random.hpp"
#include "mdiw/witness.hpp"

// Adversarial search over strategies without (genuine) entanglement.
//
// Restart r draws from derive_stream(seed, r), so a report depends only on
// the configuration, never on thread scheduling. Share dimensions are capped
// by the configuration; the bound itself holds for any dimension, so the cap
// limits how much of the strategy space is explored, nothing more.

namespace mdiw {

struct AttackConfig {
    std::size_t restarts = 200;
    std::size_t iterations = 500;
    std::size_t mixture_size = 4;
    std::size_t share_dim = 2;
    std::uint64_t seed = 4242;
    double initial_step = 0.3;
    /// The step shrinks by `decay` after a rejected move and grows by 1.5
    /// (capped at initial_step) after an accepted one.
    double decay = 0.95;
    /// 0 = hardware concurrency.
    std::size_t threads = 0;
    /// Sample full-rank share states instead of pure ones.
    bool mixed_shares = false;
    /// Keep the best-so-far value after every iteration of every restart.
    bool record_trace = false;

    /// Throws std::invalid_argument on zero counts or decay outside (0,1).
    void validate() const;
    bool operator==(const AttackConfig &) const = default;
};

using StrategySnapshot = std::variant<SeparableStrategy, BiseparableStrategy>;

struct AttackReport {
    double min_value = 0.0;
    std::optional<StrategySnapshot> best;
    std::size_t best_restart = 0;
    std::vector<double> restart_minima;
    std::uint64_t evaluations = 0;
    std::uint64_t seed = 0;
    AttackConfig config;
    double wall_time_s = 0.0;
    /// The attacked decomposition had residual above TOL_RECON.
    bool inexact_decomposition = false;
    std::vector<std::vector<double>> traces;
};

/// Random mixture of product shares with binary POVMs {1 - E, E} on
/// input (x) share; weights uniform on the simplex.
SeparableStrategy random_separable_strategy(std::span<const std::size_t> input_dims, std::size_t share_dim,
                                            std::size_t mixture_size, Rng &rng, bool mixed_shares = false);

/// Three-party mixture; each term picks a cut uniformly and gives the pair a
/// random pure (generally entangled) state on its two shares.
BiseparableStrategy random_biseparable_strategy(std::span<const std::size_t> input_dims, std::size_t share_dim,
                                                std::size_t mixture_size, Rng &rng, bool mixed_shares = false);

/// Random-perturbation local search minimizing mdi_value over separable
/// strategies, from `restarts` independent starting points.
AttackReport attack(const Decomposition &dec, const AttackConfig &config);

/// As attack(), over biseparable strategies. Requires a three-party
/// decomposition.
AttackReport biseparable_attack(const Decomposition &dec, const AttackConfig &config);

struct ScanPoint {
    double parameter;
    double value;
};

using StateFamily = std::function<DensityMatrix(double)>;

/// Bell-strategy mdi_value at every grid point, in grid order. A nonempty
/// `eta` passes each table through apply_uniform_loss() first.
std::vector<ScanPoint> violation_scan(const StateFamily &family, const Decomposition &dec,
                                      std::span<const double> grid, std::span<const double> eta = {});

/// Linear interpolation of the first sign change along the curve; a grid
/// point with value exactly zero is returned as is.
std::optional<double> zero_crossing(std::span<const ScanPoint> curve);

/// Random Kraus set {K_i} with sum K_i^dagger K_i <= 1.
std::vector<ComplexMatrix> random_trace_nonincreasing_kraus(std::size_t dim, std::size_t count, Rng &rng);

}  // namespace mdiw

#endif
