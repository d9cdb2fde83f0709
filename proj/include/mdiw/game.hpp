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

#ifndef MDIW_GAME_HPP
#define MDIW_GAME_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdiw/linalg.hpp"
#include "mdiw/states.hpp"
#include "mdiw/witness.hpp"

// Semiquantum game simulation.
//
// Every party p receives an input state on a space of dimension d_p and holds
// a share of dimension D_p. Its measurement acts on input_p (x) share_p, in
// that order. Outcomes are binary; outcome 1 is the event the functional
// weights, and lost or undetected events are counted as outcome 0.
//
// Joint operators are assembled in the party-grouped layout
//   input_1 (x) share_1 (x) input_2 (x) share_2 (x) ...
// and moved to the split layout (inputs..., shares...) with
// grouped_to_split_permutation(); all contractions go through it.

namespace mdiw {

/// Outcome-indexed POVM: element k belongs to outcome k. Validity (each
/// element PSD, elements summing to identity within 1e-10) is checked once at
/// construction.
class Povm {
   public:
    explicit Povm(std::vector<ComplexMatrix> elements);

    /// {1 - e, e} for outcomes {0, 1}.
    static Povm binary(const ComplexMatrix &outcome_one);

    std::size_t dim() const { return elements_.front().rows(); }
    std::size_t outcomes() const { return elements_.size(); }
    const ComplexMatrix &element(std::size_t outcome) const { return elements_.at(outcome); }
    const std::vector<ComplexMatrix> &elements() const { return elements_; }

   private:
    std::vector<ComplexMatrix> elements_;
};

/// Outcome 1 = projection onto |Phi+_d>, outcome 0 = its complement.
Povm bell_outcome_povm(std::size_t d);

/// Binary measurement of one party on input (x) share.
class PartyDevice {
   public:
    PartyDevice(std::size_t input_dim, std::size_t share_dim, Povm povm);

    std::size_t input_dim() const { return input_dim_; }
    std::size_t share_dim() const { return share_dim_; }
    const Povm &povm() const { return povm_; }

   private:
    std::size_t input_dim_;
    std::size_t share_dim_;
    Povm povm_;
};

class EntangledStrategy {
   public:
    /// `shared` carries one dims entry per party (its share dimension).
    EntangledStrategy(DensityMatrix shared, std::vector<PartyDevice> devices);

    const DensityMatrix &shared() const { return shared_; }
    const std::vector<PartyDevice> &devices() const { return devices_; }
    std::size_t parties() const { return devices_.size(); }

   private:
    DensityMatrix shared_;
    std::vector<PartyDevice> devices_;
};

/// Each party projects input (x) share onto |Phi+> with share dimension equal
/// to the input dimension.
EntangledStrategy bell_strategy(const DensityMatrix &shared);

struct SeparableTerm {
    double weight;
    std::vector<DensityMatrix> shares;  // one per party
};

/// sum_k p_k sigma_1^k (x) sigma_2^k (x) ..., measured by devices that are
/// the same for every k.
class SeparableStrategy {
   public:
    SeparableStrategy(std::vector<SeparableTerm> terms, std::vector<PartyDevice> devices);

    const std::vector<SeparableTerm> &terms() const { return terms_; }
    const std::vector<PartyDevice> &devices() const { return devices_; }
    std::size_t parties() const { return devices_.size(); }

   private:
    std::vector<SeparableTerm> terms_;
    std::vector<PartyDevice> devices_;
};

/// Three-party cut: `pair` shares a (possibly entangled) state, `single` is
/// alone. AB|C = {{0,1},2}, AC|B = {{0,2},1}, BC|A = {{1,2},0}.
struct Bipartition {
    std::array<std::size_t, 2> pair;
    std::size_t single;

    static Bipartition AB_C() { return {{0, 1}, 2}; }
    static Bipartition AC_B() { return {{0, 2}, 1}; }
    static Bipartition BC_A() { return {{1, 2}, 0}; }
    static std::array<Bipartition, 3> all() { return {AB_C(), AC_B(), BC_A()}; }
    std::string name() const;
    bool operator==(const Bipartition &) const = default;
};

struct BiseparableTerm {
    Bipartition cut;
    double weight;
    DensityMatrix group_state;   // on share_pair[0] (x) share_pair[1]
    DensityMatrix single_state;  // on share_single
};

class BiseparableStrategy {
   public:
    BiseparableStrategy(std::vector<BiseparableTerm> terms, std::vector<PartyDevice> devices);

    const std::vector<BiseparableTerm> &terms() const { return terms_; }
    const std::vector<PartyDevice> &devices() const { return devices_; }
    std::size_t parties() const { return devices_.size(); }

   private:
    std::vector<BiseparableTerm> terms_;
    std::vector<PartyDevice> devices_;
};

/// P(outcomes | input labels) for an n-party game. Rows are all label tuples
/// in lexicographic order (first party slowest). The full distribution, when
/// present, is indexed by outcome bitstring with party 1 as the most
/// significant bit.
class CorrelationTable {
   public:
    CorrelationTable(std::vector<std::vector<std::string>> labels, std::vector<double> p_all_ones,
                     std::optional<std::vector<std::vector<double>>> full = std::nullopt);

    std::size_t parties() const { return labels_.size(); }
    std::size_t rows() const { return p_all_ones_.size(); }
    std::size_t outcome_patterns() const { return std::size_t{1} << parties(); }
    const std::vector<std::vector<std::string>> &labels() const { return labels_; }
    std::vector<std::string> party_names() const;

    std::span<const double> p_all_ones() const { return p_all_ones_; }
    double p_all_ones(std::span<const std::size_t> label_index) const;
    bool has_full() const { return full_.has_value(); }
    const std::vector<std::vector<double>> &full() const { return full_.value(); }
    std::size_t row_index(std::span<const std::size_t> label_index) const;
    /// Label indices of row `row`.
    std::vector<std::size_t> label_index(std::size_t row) const;

    /// Set when lossy events were folded into outcome 0.
    const std::string &loss_convention() const { return loss_convention_; }
    void set_loss_convention(std::string c) { loss_convention_ = std::move(c); }

    std::string to_csv() const;

   private:
    std::vector<std::vector<std::string>> labels_;
    std::vector<double> p_all_ones_;
    std::optional<std::vector<std::vector<double>>> full_;
    std::string loss_convention_;
};

/// Permutation taking (in_1, sh_1, ..., in_k, sh_k) to (in_1..in_k, sh_1..sh_k)
/// in the sense of permute_subsystems().
std::vector<std::size_t> grouped_to_split_permutation(std::size_t parties);

/// Full contraction tr[(x)_p E_p^{b_p} . (inputs (x) rho)] for every input tuple.
CorrelationTable simulate_entangled(const EntangledStrategy &strategy, const std::vector<InputEnsemble> &ensembles,
                                    bool full_distribution = false);

/// tr[((x)_p input_p^T) rho] / prod_p d_p: the all-ones probability of the
/// Bell-projection strategy.
double fast_entangled_prob(const DensityMatrix &rho, std::span<const DensityMatrix> inputs);

/// Bell-strategy table assembled from fast_entangled_prob().
CorrelationTable bell_strategy_table(const DensityMatrix &rho, const std::vector<InputEnsemble> &ensembles);

enum class ShareLayout { input_then_share, share_then_input };

/// tr_share[e (1 (x) share)] (or (share (x) 1) for share_then_input): the
/// operator acting on the input space alone.
ComplexMatrix effective_povm_element(const ComplexMatrix &e, const DensityMatrix &share, ShareLayout layout);

/// Effective element of a group of parties holding a joint share. Each element
/// acts on input_p (x) share_p; `group_state` lives on the shares in the same
/// party order. The result acts on (x)_p input_p.
ComplexMatrix effective_group_element(std::span<const ComplexMatrix> elements, std::span<const std::size_t> input_dims,
                                      const ComplexMatrix &group_state);

CorrelationTable simulate_separable(const SeparableStrategy &strategy, const std::vector<InputEnsemble> &ensembles,
                                    bool full_distribution = false);
CorrelationTable simulate_separable(const BiseparableStrategy &strategy, const std::vector<InputEnsemble> &ensembles,
                                    bool full_distribution = false);

/// sum beta_{s,t,..} P(1,..,1 | s,t,..). Throws std::invalid_argument when the
/// table's labels do not match the decomposition's ensembles.
double mdi_value(const Decomposition &dec, const CorrelationTable &table);

/// Coefficients over (input tuple, outcome pattern): the general linear
/// functional on full correlation data.
struct GeneralFunctional {
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<double>> coefficients;  // [row][outcome pattern]
};

/// Embeds a decomposition as the functional weighting only the all-ones event.
GeneralFunctional functional_from_decomposition(const Decomposition &dec);
double general_value(const GeneralFunctional &f, const CorrelationTable &table);

/// Each party independently keeps an outcome-1 event with probability eta_p
/// and reports 0 otherwise. All-ones probabilities scale by prod eta.
CorrelationTable apply_uniform_loss(const CorrelationTable &table, std::span<const double> eta);

/// E'_o = sum_i K_i^dagger E_o K_i for outcomes o >= 1, with the remainder
/// routed to outcome 0. Requires sum_i K_i^dagger K_i <= 1.
Povm precompose_channel(const Povm &povm, std::span<const ComplexMatrix> kraus);

}  // namespace mdiw

#endif
