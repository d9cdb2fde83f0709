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
#include <chrono>
#include <cmath>
#include <thread>

namespace mdiw {

namespace {

enum class Mode { separable, biseparable };

// Unconstrained coordinates of a strategy. Every field is kept feasible:
// effects have spectrum in [0,1], weights lie on the simplex, and share
// states are G G^dagger / tr for a nonzero factor G.
struct Params {
    std::vector<ComplexMatrix> effects;
    std::vector<double> weights;
    std::vector<std::vector<ComplexMatrix>> factors;  // [term][slot]
    std::vector<Bipartition> cuts;                    // biseparable only
};

ComplexMatrix random_factor(std::size_t dim, std::size_t rank, Rng &rng) {
    ComplexMatrix g(dim, rank);
    for (auto &z : g.entries()) {
        z = Complex(standard_normal(rng), standard_normal(rng));
    }
    g *= 1.0 / frobenius_norm(g);
    return g;
}

DensityMatrix state_of(const ComplexMatrix &factor, DimsProfile dims) {
    ComplexMatrix rho = factor * factor.adjoint();
    rho *= 1.0 / rho.trace().real();
    return DensityMatrix(std::move(rho), std::move(dims));
}

std::vector<PartyDevice> devices_of(const Params &params, std::span<const std::size_t> input_dims,
                                    std::size_t share_dim) {
    std::vector<PartyDevice> devices;
    for (std::size_t p = 0; p < params.effects.size(); ++p) {
        devices.emplace_back(input_dims[p], share_dim, Povm::binary(params.effects[p]));
    }
    return devices;
}

Params sample_params(Mode mode, std::span<const std::size_t> input_dims, std::size_t share_dim, std::size_t k,
                     Rng &rng, bool mixed) {
    Params params;
    for (auto d : input_dims) {
        params.effects.push_back(random_povm_element(d * share_dim, rng));
    }
    params.weights = random_simplex(k, rng);
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<ComplexMatrix> slots;
        if (mode == Mode::separable) {
            for (std::size_t p = 0; p < input_dims.size(); ++p) {
                slots.push_back(random_factor(share_dim, mixed ? share_dim : 1, rng));
            }
        } else {
            const auto cuts = Bipartition::all();
            params.cuts.push_back(cuts[std::uniform_int_distribution<std::size_t>(0, 2)(rng)]);
            const std::size_t pair_dim = share_dim * share_dim;
            slots.push_back(random_factor(pair_dim, mixed ? pair_dim : 1, rng));
            slots.push_back(random_factor(share_dim, mixed ? share_dim : 1, rng));
        }
        params.factors.push_back(std::move(slots));
    }
    return params;
}

StrategySnapshot build(Mode mode, const Params &params, std::span<const std::size_t> input_dims,
                       std::size_t share_dim) {
    auto devices = devices_of(params, input_dims, share_dim);
    if (mode == Mode::separable) {
        std::vector<SeparableTerm> terms;
        for (std::size_t t = 0; t < params.weights.size(); ++t) {
            SeparableTerm term{params.weights[t], {}};
            for (const auto &f : params.factors[t]) {
                term.shares.push_back(state_of(f, DimsProfile{share_dim}));
            }
            terms.push_back(std::move(term));
        }
        return SeparableStrategy(std::move(terms), std::move(devices));
    }
    std::vector<BiseparableTerm> terms;
    for (std::size_t t = 0; t < params.weights.size(); ++t) {
        terms.push_back({params.cuts[t], params.weights[t], state_of(params.factors[t][0], DimsProfile{share_dim, share_dim}),
                         state_of(params.factors[t][1], DimsProfile{share_dim})});
    }
    return BiseparableStrategy(std::move(terms), std::move(devices));
}

double evaluate(const StrategySnapshot &strategy, const Decomposition &dec) {
    return std::visit([&](const auto &s) { return mdi_value(dec, simulate_separable(s, dec.ensembles())); }, strategy);
}

// Perturbs one randomly chosen block of coordinates and re-projects it.
void perturb(Params &params, double step, Rng &rng) {
    std::size_t blocks = params.effects.size() + 1;
    for (const auto &slots : params.factors) {
        blocks += slots.size();
    }
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, blocks - 1)(rng);

    if (pick < params.effects.size()) {
        auto &e = params.effects[pick];
        ComplexMatrix h = random_hermitian(e.rows(), rng);
        h *= step * std::sqrt(static_cast<double>(e.rows())) / frobenius_norm(h);
        e = clip_spectrum(e + h, 0.0, 1.0);
        return;
    }
    pick -= params.effects.size();
    if (pick == 0) {
        std::vector<double> w = params.weights;
        double total = 0.0;
        for (auto &x : w) {
            x = std::abs(x + step * standard_normal(rng));
            total += x;
        }
        if (total > 0.0) {
            for (auto &x : w) {
                x /= total;
            }
            params.weights = std::move(w);
        }
        return;
    }
    --pick;
    for (auto &slots : params.factors) {
        if (pick < slots.size()) {
            ComplexMatrix &g = slots[pick];
            ComplexMatrix next = g;
            for (auto &z : next.entries()) {
                z += step * Complex(standard_normal(rng), standard_normal(rng));
            }
            const double norm = frobenius_norm(next);
            if (norm > 0.0) {
                next *= 1.0 / norm;
                g = std::move(next);
            }
            return;
        }
        pick -= slots.size();
    }
}

// Step multiplier after an accepted move; rejected moves multiply by decay.
constexpr double STEP_GROWTH = 1.5;

struct RestartResult {
    double best = 0.0;
    Params params;
    std::uint64_t evaluations = 0;
    std::vector<double> trace;
};

RestartResult run_restart(Mode mode, const Decomposition &dec, const AttackConfig &config,
                          std::span<const std::size_t> input_dims, std::size_t restart) {
    Rng rng = derive_stream(config.seed, restart);
    RestartResult result;
    result.params = sample_params(mode, input_dims, config.share_dim, config.mixture_size, rng, config.mixed_shares);
    result.best = evaluate(build(mode, result.params, input_dims, config.share_dim), dec);
    result.evaluations = 1;
    if (config.record_trace) {
        result.trace.reserve(config.iterations + 1);
        result.trace.push_back(result.best);
    }
    double step = config.initial_step;
    for (std::size_t it = 0; it < config.iterations; ++it) {
        Params candidate = result.params;
        perturb(candidate, step, rng);
        const double value = evaluate(build(mode, candidate, input_dims, config.share_dim), dec);
        ++result.evaluations;
        if (value < result.best) {
            result.best = value;
            result.params = std::move(candidate);
            step = std::min(step * STEP_GROWTH, config.initial_step);
        } else {
            step *= config.decay;
        }
        if (config.record_trace) {
            result.trace.push_back(result.best);
        }
    }
    return result;
}

AttackReport run_attack(Mode mode, const Decomposition &dec, const AttackConfig &config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::size_t> input_dims;
    for (const auto &e : dec.ensembles()) {
        input_dims.push_back(e.dim());
    }

    std::vector<RestartResult> results(config.restarts);
    std::size_t threads = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, config.restarts);
    if (threads <= 1) {
        for (std::size_t r = 0; r < config.restarts; ++r) {
            results[r] = run_restart(mode, dec, config, input_dims, r);
        }
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t r = w; r < config.restarts; r += threads) {
                        results[r] = run_restart(mode, dec, config, input_dims, r);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    AttackReport report;
    report.config = config;
    report.seed = config.seed;
    report.inexact_decomposition = !dec.exact();
    report.best_restart = 0;
    for (std::size_t r = 0; r < results.size(); ++r) {
        report.restart_minima.push_back(results[r].best);
        report.evaluations += results[r].evaluations;
        if (results[r].best < results[report.best_restart].best) {
            report.best_restart = r;
        }
        if (config.record_trace) {
            report.traces.push_back(std::move(results[r].trace));
        }
    }
    report.min_value = results[report.best_restart].best;
    report.best = build(mode, results[report.best_restart].params, input_dims, config.share_dim);
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace

void AttackConfig::validate() const {
    if (restarts == 0 || iterations == 0 || mixture_size == 0 || share_dim == 0) {
        throw std::invalid_argument("AttackConfig: counts must be at least 1");
    }
    if (!(decay > 0.0 && decay < 1.0)) {
        throw std::invalid_argument("AttackConfig: decay must lie in (0,1)");
    }
    if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
        throw std::invalid_argument("AttackConfig: initial_step must be positive");
    }
}

SeparableStrategy random_separable_strategy(std::span<const std::size_t> input_dims, std::size_t share_dim,
                                            std::size_t mixture_size, Rng &rng, bool mixed_shares) {
    if (mixture_size == 0 || share_dim == 0 || input_dims.empty()) {
        throw std::invalid_argument("random_separable_strategy: empty strategy space");
    }
    const auto params = sample_params(Mode::separable, input_dims, share_dim, mixture_size, rng, mixed_shares);
    return std::get<SeparableStrategy>(build(Mode::separable, params, input_dims, share_dim));
}

BiseparableStrategy random_biseparable_strategy(std::span<const std::size_t> input_dims, std::size_t share_dim,
                                                std::size_t mixture_size, Rng &rng, bool mixed_shares) {
    if (input_dims.size() != 3) {
        throw DimensionError("random_biseparable_strategy: three parties required");
    }
    if (mixture_size == 0 || share_dim == 0) {
        throw std::invalid_argument("random_biseparable_strategy: empty strategy space");
    }
    const auto params = sample_params(Mode::biseparable, input_dims, share_dim, mixture_size, rng, mixed_shares);
    return std::get<BiseparableStrategy>(build(Mode::biseparable, params, input_dims, share_dim));
}

AttackReport attack(const Decomposition &dec, const AttackConfig &config) {
    return run_attack(Mode::separable, dec, config);
}

AttackReport biseparable_attack(const Decomposition &dec, const AttackConfig &config) {
    if (dec.parties() != 3) {
        throw DimensionError("biseparable_attack: three-party decomposition required");
    }
    return run_attack(Mode::biseparable, dec, config);
}

std::vector<ScanPoint> violation_scan(const StateFamily &family, const Decomposition &dec,
                                      std::span<const double> grid, std::span<const double> eta) {
    std::vector<ScanPoint> curve;
    curve.reserve(grid.size());
    for (double v : grid) {
        const DensityMatrix rho = family(v);
        CorrelationTable table = bell_strategy_table(rho, dec.ensembles());
        if (!eta.empty()) {
            table = apply_uniform_loss(table, eta);
        }
        curve.push_back({v, mdi_value(dec, table)});
    }
    return curve;
}

std::optional<double> zero_crossing(std::span<const ScanPoint> curve) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].value == 0.0) {
            return curve[i].parameter;
        }
        if (i + 1 < curve.size() && (curve[i].value < 0.0) != (curve[i + 1].value < 0.0) &&
            curve[i + 1].value != 0.0) {
            const auto &a = curve[i];
            const auto &b = curve[i + 1];
            return a.parameter - a.value * (b.parameter - a.parameter) / (b.value - a.value);
        }
    }
    return std::nullopt;
}

std::vector<ComplexMatrix> random_trace_nonincreasing_kraus(std::size_t dim, std::size_t count, Rng &rng) {
    std::vector<ComplexMatrix> kraus;
    ComplexMatrix budget(dim, dim);
    for (std::size_t i = 0; i < count; ++i) {
        ComplexMatrix k(dim, dim);
        for (auto &z : k.entries()) {
            z = Complex(standard_normal(rng), standard_normal(rng));
        }
        budget += k.adjoint() * k;
        kraus.push_back(std::move(k));
    }
    const double scale = 1.0 / std::sqrt(hermitian_eigenvalues(budget).back() * (1.0 + uniform01(rng)));
    for (auto &k : kraus) {
        k *= scale;
    }
    return kraus;
}

}  // namespace mdiw
