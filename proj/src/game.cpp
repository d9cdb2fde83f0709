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

#include "mdiw/game.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mdiw {

namespace {

constexpr double kProbabilityTol = 1e-10;
constexpr double kWeightTol = 1e-12;

int outcome_bit(std::size_t pattern, std::size_t party, std::size_t parties) {
    return static_cast<int>((pattern >> (parties - 1 - party)) & 1U);
}

void check_devices_against_ensembles(const std::vector<PartyDevice> &devices,
                                     const std::vector<InputEnsemble> &ensembles) {
    if (devices.size() != ensembles.size()) {
        throw DimensionError("strategy party count differs from ensemble count");
    }
    for (std::size_t p = 0; p < devices.size(); ++p) {
        if (devices[p].input_dim() != ensembles[p].dim()) {
            throw DimensionError("device input dimension differs from ensemble dimension for party " +
                                 std::to_string(p));
        }
        if (devices[p].povm().outcomes() != 2) {
            throw std::invalid_argument("game measurements must have binary outcomes");
        }
    }
}

void check_weights(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("mixture weight must be nonnegative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kWeightTol) {
        throw std::invalid_argument("mixture weights must sum to 1");
    }
}

std::vector<std::vector<std::string>> labels_of(const std::vector<InputEnsemble> &ensembles) {
    std::vector<std::vector<std::string>> labels;
    for (const auto &e : ensembles) {
        labels.push_back(e.labels());
    }
    return labels;
}

std::size_t row_count(const std::vector<InputEnsemble> &ensembles) {
    std::size_t n = 1;
    for (const auto &e : ensembles) {
        n *= e.size();
    }
    return n;
}

// Decodes a row index into per-party label indices (first party slowest).
std::vector<std::size_t> decode_row(std::size_t row, const std::vector<std::size_t> &sizes) {
    std::vector<std::size_t> idx(sizes.size());
    for (std::size_t p = sizes.size(); p-- > 0;) {
        idx[p] = row % sizes[p];
        row /= sizes[p];
    }
    return idx;
}

struct ShareGroup {
    std::vector<std::size_t> parties;
    const ComplexMatrix *state;
};

struct GroupedTerm {
    double weight;
    std::vector<ShareGroup> groups;
};

// Shared core of the separable and biseparable simulations: every term is a
// product over groups of parties, each group holding its own share state.
CorrelationTable simulate_grouped(const std::vector<GroupedTerm> &terms, const std::vector<PartyDevice> &devices,
                                  const std::vector<InputEnsemble> &ensembles, bool full_distribution) {
    check_devices_against_ensembles(devices, ensembles);
    const std::size_t n = devices.size();
    const std::size_t rows = row_count(ensembles);
    const std::size_t patterns = std::size_t{1} << n;
    const std::size_t all_ones = patterns - 1;
    std::vector<std::size_t> sizes;
    for (const auto &e : ensembles) {
        sizes.push_back(e.size());
    }

    std::vector<std::vector<double>> dist(rows, std::vector<double>(full_distribution ? patterns : 1, 0.0));

    for (const auto &term : terms) {
        // response[g][sub_pattern][group label row]
        std::vector<std::vector<std::vector<double>>> response(term.groups.size());
        for (std::size_t g = 0; g < term.groups.size(); ++g) {
            const auto &group = term.groups[g];
            const std::size_t k = group.parties.size();
            const std::size_t sub_patterns = std::size_t{1} << k;
            std::vector<std::size_t> group_sizes, input_dims;
            for (auto p : group.parties) {
                group_sizes.push_back(ensembles[p].size());
                input_dims.push_back(ensembles[p].dim());
            }
            std::size_t group_rows = 1;
            for (auto s : group_sizes) {
                group_rows *= s;
            }
            std::vector<ComplexMatrix> inputs;
            inputs.reserve(group_rows);
            for (std::size_t r = 0; r < group_rows; ++r) {
                const auto idx = decode_row(r, group_sizes);
                std::vector<ComplexMatrix> factors;
                for (std::size_t i = 0; i < k; ++i) {
                    factors.push_back(ensembles[group.parties[i]][idx[i]].state.matrix());
                }
                inputs.push_back(kron_all(factors));
            }

            response[g].assign(sub_patterns, {});
            for (std::size_t sp = 0; sp < sub_patterns; ++sp) {
                if (!full_distribution && sp != sub_patterns - 1) {
                    continue;
                }
                std::vector<ComplexMatrix> elements;
                for (std::size_t i = 0; i < k; ++i) {
                    const int bit = static_cast<int>((sp >> (k - 1 - i)) & 1U);
                    elements.push_back(devices[group.parties[i]].povm().element(bit));
                }
                const ComplexMatrix eff = effective_group_element(elements, input_dims, *group.state);
                auto &out = response[g][sp];
                out.resize(group_rows);
                for (std::size_t r = 0; r < group_rows; ++r) {
                    out[r] = trace_product(eff, inputs[r]).real();
                }
            }
        }

        for (std::size_t row = 0; row < rows; ++row) {
            const auto idx = decode_row(row, sizes);
            for (std::size_t slot = 0; slot < dist[row].size(); ++slot) {
                const std::size_t pattern = full_distribution ? slot : all_ones;
                double prob = term.weight;
                for (std::size_t g = 0; g < term.groups.size(); ++g) {
                    const auto &group = term.groups[g];
                    std::size_t sp = 0, grow = 0;
                    for (auto p : group.parties) {
                        sp = (sp << 1) | static_cast<std::size_t>(outcome_bit(pattern, p, n));
                        grow = grow * ensembles[p].size() + idx[p];
                    }
                    prob *= response[g][sp][grow];
                }
                dist[row][slot] += prob;
            }
        }
    }

    std::vector<double> ones(rows);
    for (std::size_t row = 0; row < rows; ++row) {
        ones[row] = full_distribution ? dist[row][all_ones] : dist[row][0];
    }
    std::optional<std::vector<std::vector<double>>> full;
    if (full_distribution) {
        full = std::move(dist);
    }
    return CorrelationTable(labels_of(ensembles), std::move(ones), std::move(full));
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("Povm: no elements");
    }
    const std::size_t d = elements_.front().rows();
    ComplexMatrix total(d, d);
    for (const auto &e : elements_) {
        if (!e.is_square() || e.rows() != d) {
            throw DimensionError("Povm: elements differ in dimension");
        }
        const auto report = validate(e, MatrixKind::povm_element);
        if (!report.ok()) {
            throw std::invalid_argument("Povm: invalid element: " + report.describe());
        }
        total += e;
    }
    const double defect = frobenius_distance(total, ComplexMatrix::identity(d));
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            worst = std::max(worst, std::abs(total(i, j) - (i == j ? 1.0 : 0.0)));
        }
    }
    if (worst > 1e-10) {
        std::ostringstream ss;
        ss << "Povm: elements do not sum to identity (Frobenius defect " << defect << ")";
        throw std::invalid_argument(ss.str());
    }
}

Povm Povm::binary(const ComplexMatrix &outcome_one) {
    if (!outcome_one.is_square()) {
        throw DimensionError("Povm::binary: element is not square");
    }
    return Povm({ComplexMatrix::identity(outcome_one.rows()) - outcome_one, outcome_one});
}

Povm bell_outcome_povm(std::size_t d) {
    return Povm::binary(ComplexMatrix::projector(max_entangled(d)));
}

PartyDevice::PartyDevice(std::size_t input_dim, std::size_t share_dim, Povm povm)
    : input_dim_(input_dim), share_dim_(share_dim), povm_(std::move(povm)) {
    if (input_dim_ == 0 || share_dim_ == 0 || povm_.dim() != input_dim_ * share_dim_) {
        throw DimensionError("PartyDevice: POVM dimension must equal input_dim * share_dim");
    }
}

EntangledStrategy::EntangledStrategy(DensityMatrix shared, std::vector<PartyDevice> devices)
    : shared_(std::move(shared)), devices_(std::move(devices)) {
    if (shared_.dims().count() != devices_.size()) {
        throw DimensionError("EntangledStrategy: shared state dims must list one share per party");
    }
    for (std::size_t p = 0; p < devices_.size(); ++p) {
        if (shared_.dims()[p] != devices_[p].share_dim()) {
            throw DimensionError("EntangledStrategy: share dimension mismatch for party " + std::to_string(p));
        }
    }
}

EntangledStrategy bell_strategy(const DensityMatrix &shared) {
    std::vector<PartyDevice> devices;
    for (std::size_t p = 0; p < shared.dims().count(); ++p) {
        const std::size_t d = shared.dims()[p];
        devices.emplace_back(d, d, bell_outcome_povm(d));
    }
    return EntangledStrategy(shared, std::move(devices));
}

SeparableStrategy::SeparableStrategy(std::vector<SeparableTerm> terms, std::vector<PartyDevice> devices)
    : terms_(std::move(terms)), devices_(std::move(devices)) {
    if (terms_.empty()) {
        throw std::invalid_argument("SeparableStrategy: no mixture terms");
    }
    std::vector<double> weights;
    for (const auto &t : terms_) {
        weights.push_back(t.weight);
        if (t.shares.size() != devices_.size()) {
            throw DimensionError("SeparableStrategy: each term needs one share per party");
        }
        for (std::size_t p = 0; p < devices_.size(); ++p) {
            if (t.shares[p].dim() != devices_[p].share_dim()) {
                throw DimensionError("SeparableStrategy: share dimension mismatch");
            }
        }
    }
    check_weights(weights);
}

std::string Bipartition::name() const {
    static const char *names = "ABCDEFGH";
    std::string s;
    s += names[pair[0]];
    s += names[pair[1]];
    s += '|';
    s += names[single];
    return s;
}

BiseparableStrategy::BiseparableStrategy(std::vector<BiseparableTerm> terms, std::vector<PartyDevice> devices)
    : terms_(std::move(terms)), devices_(std::move(devices)) {
    if (devices_.size() != 3) {
        throw DimensionError("BiseparableStrategy: exactly three parties");
    }
    if (terms_.empty()) {
        throw std::invalid_argument("BiseparableStrategy: no mixture terms");
    }
    std::vector<double> weights;
    for (const auto &t : terms_) {
        weights.push_back(t.weight);
        const auto [a, b] = t.cut.pair;
        const std::size_t c = t.cut.single;
        if (a >= b || b > 2 || c > 2 || c == a || c == b) {
            throw std::invalid_argument("BiseparableStrategy: malformed bipartition");
        }
        if (t.group_state.dim() != devices_[a].share_dim() * devices_[b].share_dim() ||
            t.single_state.dim() != devices_[c].share_dim()) {
            throw DimensionError("BiseparableStrategy: group state dims inconsistent with " + t.cut.name());
        }
    }
    check_weights(weights);
}

CorrelationTable::CorrelationTable(std::vector<std::vector<std::string>> labels, std::vector<double> p_all_ones,
                                   std::optional<std::vector<std::vector<double>>> full)
    : labels_(std::move(labels)), p_all_ones_(std::move(p_all_ones)), full_(std::move(full)) {
    std::size_t expected = 1;
    for (const auto &l : labels_) {
        expected *= l.size();
    }
    if (labels_.empty() || p_all_ones_.size() != expected) {
        throw DimensionError("CorrelationTable: row count does not match label lists");
    }
    for (double p : p_all_ones_) {
        if (!(p >= -kProbabilityTol && p <= 1.0 + kProbabilityTol)) {
            throw std::invalid_argument("CorrelationTable: probability outside [0,1]");
        }
    }
    if (full_) {
        if (full_->size() != expected) {
            throw DimensionError("CorrelationTable: full distribution row count mismatch");
        }
        for (std::size_t r = 0; r < expected; ++r) {
            const auto &row = (*full_)[r];
            if (row.size() != outcome_patterns()) {
                throw DimensionError("CorrelationTable: outcome pattern count mismatch");
            }
            double total = 0.0;
            for (double p : row) {
                if (!(p >= -kProbabilityTol && p <= 1.0 + kProbabilityTol)) {
                    throw std::invalid_argument("CorrelationTable: probability outside [0,1]");
                }
                total += p;
            }
            if (std::abs(total - 1.0) > kProbabilityTol) {
                throw std::invalid_argument("CorrelationTable: outcome distribution does not sum to 1");
            }
            if (std::abs(row.back() - p_all_ones_[r]) > kProbabilityTol) {
                throw std::invalid_argument("CorrelationTable: all-ones column inconsistent with full row");
            }
        }
    }
}

std::vector<std::string> CorrelationTable::party_names() const {
    std::vector<std::string> names;
    for (std::size_t p = 0; p < parties(); ++p) {
        names.push_back(p < 8 ? std::string(1, static_cast<char>('A' + p)) : "P" + std::to_string(p + 1));
    }
    return names;
}

std::size_t CorrelationTable::row_index(std::span<const std::size_t> label_index) const {
    if (label_index.size() != parties()) {
        throw DimensionError("CorrelationTable: label index length mismatch");
    }
    std::size_t row = 0;
    for (std::size_t p = 0; p < parties(); ++p) {
        if (label_index[p] >= labels_[p].size()) {
            throw std::out_of_range("CorrelationTable: label index out of range");
        }
        row = row * labels_[p].size() + label_index[p];
    }
    return row;
}

std::vector<std::size_t> CorrelationTable::label_index(std::size_t row) const {
    std::vector<std::size_t> sizes;
    for (const auto &l : labels_) {
        sizes.push_back(l.size());
    }
    return decode_row(row, sizes);
}

double CorrelationTable::p_all_ones(std::span<const std::size_t> label_index) const {
    return p_all_ones_[row_index(label_index)];
}

std::string CorrelationTable::to_csv() const {
    std::string out;
    char buf[64];
    const auto names = party_names();
    for (const auto &n : names) {
        out += n;
        out += ',';
    }
    out += "p_all_ones";
    if (full_) {
        for (std::size_t b = 0; b < outcome_patterns(); ++b) {
            out += ",p_";
            for (std::size_t p = 0; p < parties(); ++p) {
                out += static_cast<char>('0' + outcome_bit(b, p, parties()));
            }
        }
    }
    out += '\n';
    for (std::size_t r = 0; r < rows(); ++r) {
        const auto idx = label_index(r);
        for (std::size_t p = 0; p < parties(); ++p) {
            out += labels_[p][idx[p]];
            out += ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", p_all_ones_[r]);
        out += buf;
        if (full_) {
            for (double p : (*full_)[r]) {
                std::snprintf(buf, sizeof buf, ",%.17g", p);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

std::vector<std::size_t> grouped_to_split_permutation(std::size_t parties) {
    std::vector<std::size_t> perm(2 * parties);
    for (std::size_t p = 0; p < parties; ++p) {
        perm[p] = 2 * p;                // input_p
        perm[parties + p] = 2 * p + 1;  // share_p
    }
    return perm;
}

CorrelationTable simulate_entangled(const EntangledStrategy &strategy, const std::vector<InputEnsemble> &ensembles,
                                    bool full_distribution) {
    const auto &devices = strategy.devices();
    check_devices_against_ensembles(devices, ensembles);
    const std::size_t n = devices.size();
    const std::size_t patterns = std::size_t{1} << n;

    std::vector<std::size_t> grouped;
    for (const auto &d : devices) {
        grouped.push_back(d.input_dim());
        grouped.push_back(d.share_dim());
    }
    const DimsProfile grouped_dims(grouped);
    const auto perm = grouped_to_split_permutation(n);

    // Joint measurement operators in the split layout, one per outcome pattern.
    std::vector<ComplexMatrix> joint(patterns);
    for (std::size_t b = 0; b < patterns; ++b) {
        if (!full_distribution && b != patterns - 1) {
            continue;
        }
        std::vector<ComplexMatrix> factors;
        for (std::size_t p = 0; p < n; ++p) {
            factors.push_back(devices[p].povm().element(outcome_bit(b, p, n)));
        }
        joint[b] = permute_subsystems(kron_all(factors), grouped_dims, perm);
    }

    std::vector<std::size_t> sizes;
    for (const auto &e : ensembles) {
        sizes.push_back(e.size());
    }
    const std::size_t rows = row_count(ensembles);
    std::vector<double> ones(rows);
    std::vector<std::vector<double>> full(full_distribution ? rows : 0);
    for (std::size_t row = 0; row < rows; ++row) {
        const auto idx = decode_row(row, sizes);
        std::vector<ComplexMatrix> factors;
        for (std::size_t p = 0; p < n; ++p) {
            factors.push_back(ensembles[p][idx[p]].state.matrix());
        }
        factors.push_back(strategy.shared().matrix());
        const ComplexMatrix joint_state = kron_all(factors);
        if (full_distribution) {
            full[row].resize(patterns);
            for (std::size_t b = 0; b < patterns; ++b) {
                full[row][b] = trace_product(joint[b], joint_state).real();
            }
            ones[row] = full[row][patterns - 1];
        } else {
            ones[row] = trace_product(joint[patterns - 1], joint_state).real();
        }
    }
    std::optional<std::vector<std::vector<double>>> maybe_full;
    if (full_distribution) {
        maybe_full = std::move(full);
    }
    return CorrelationTable(labels_of(ensembles), std::move(ones), std::move(maybe_full));
}

double fast_entangled_prob(const DensityMatrix &rho, std::span<const DensityMatrix> inputs) {
    if (rho.dims().count() != inputs.size()) {
        throw DimensionError("fast_entangled_prob: one input per party required");
    }
    std::vector<ComplexMatrix> factors;
    double divisor = 1.0;
    for (std::size_t p = 0; p < inputs.size(); ++p) {
        if (inputs[p].dim() != rho.dims()[p]) {
            throw DimensionError("fast_entangled_prob: input dimension differs from share dimension");
        }
        factors.push_back(transpose(inputs[p].matrix()));
        divisor *= static_cast<double>(inputs[p].dim());
    }
    return trace_product(kron_all(factors), rho.matrix()).real() / divisor;
}

CorrelationTable bell_strategy_table(const DensityMatrix &rho, const std::vector<InputEnsemble> &ensembles) {
    if (rho.dims().count() != ensembles.size()) {
        throw DimensionError("bell_strategy_table: ensemble count differs from party count");
    }
    std::vector<std::size_t> sizes;
    for (const auto &e : ensembles) {
        sizes.push_back(e.size());
    }
    const std::size_t rows = row_count(ensembles);
    std::vector<double> ones(rows);
    for (std::size_t row = 0; row < rows; ++row) {
        const auto idx = decode_row(row, sizes);
        std::vector<DensityMatrix> inputs;
        for (std::size_t p = 0; p < ensembles.size(); ++p) {
            inputs.push_back(ensembles[p][idx[p]].state);
        }
        ones[row] = fast_entangled_prob(rho, inputs);
    }
    return CorrelationTable(labels_of(ensembles), std::move(ones));
}

ComplexMatrix effective_group_element(std::span<const ComplexMatrix> elements, std::span<const std::size_t> input_dims,
                                      const ComplexMatrix &group_state) {
    if (elements.size() != input_dims.size() || elements.empty()) {
        throw DimensionError("effective_group_element: one input dimension per element required");
    }
    std::vector<std::size_t> grouped;
    std::size_t in_total = 1, sh_total = 1;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const std::size_t d = input_dims[i];
        if (d == 0 || elements[i].rows() % d != 0 || !elements[i].is_square()) {
            throw DimensionError("effective_group_element: element size not a multiple of input dimension");
        }
        const std::size_t share = elements[i].rows() / d;
        grouped.push_back(d);
        grouped.push_back(share);
        in_total *= d;
        sh_total *= share;
    }
    if (!group_state.is_square() || group_state.rows() != sh_total) {
        throw DimensionError("effective_group_element: share state dimension mismatch");
    }
    ComplexMatrix m = kron_all(elements);
    if (elements.size() > 1) {
        m = permute_subsystems(m, DimsProfile(grouped), grouped_to_split_permutation(elements.size()));
    }
    // (tr_share[m (1 (x) sigma)])_{ij} = sum_{ab} m_{(i,a),(j,b)} sigma_{b,a}
    ComplexMatrix out(in_total, in_total);
    for (std::size_t i = 0; i < in_total; ++i) {
        for (std::size_t j = 0; j < in_total; ++j) {
            Complex acc = 0.0;
            for (std::size_t a = 0; a < sh_total; ++a) {
                for (std::size_t b = 0; b < sh_total; ++b) {
                    acc += m(i * sh_total + a, j * sh_total + b) * group_state(b, a);
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

ComplexMatrix effective_povm_element(const ComplexMatrix &e, const DensityMatrix &share, ShareLayout layout) {
    const std::size_t sh = share.dim();
    if (!e.is_square() || e.rows() % sh != 0) {
        throw DimensionError("effective_povm_element: element size not a multiple of share dimension");
    }
    const std::size_t in = e.rows() / sh;
    const std::size_t dims[] = {in};
    if (layout == ShareLayout::input_then_share) {
        return effective_group_element(std::span<const ComplexMatrix>(&e, 1), dims, share.matrix());
    }
    const std::size_t swap[] = {1, 0};
    const ComplexMatrix reordered = permute_subsystems(e, DimsProfile{sh, in}, swap);
    return effective_group_element(std::span<const ComplexMatrix>(&reordered, 1), dims, share.matrix());
}

CorrelationTable simulate_separable(const SeparableStrategy &strategy, const std::vector<InputEnsemble> &ensembles,
                                    bool full_distribution) {
    std::vector<GroupedTerm> terms;
    for (const auto &t : strategy.terms()) {
        GroupedTerm g{t.weight, {}};
        for (std::size_t p = 0; p < t.shares.size(); ++p) {
            g.groups.push_back({{p}, &t.shares[p].matrix()});
        }
        terms.push_back(std::move(g));
    }
    return simulate_grouped(terms, strategy.devices(), ensembles, full_distribution);
}

CorrelationTable simulate_separable(const BiseparableStrategy &strategy, const std::vector<InputEnsemble> &ensembles,
                                    bool full_distribution) {
    std::vector<GroupedTerm> terms;
    for (const auto &t : strategy.terms()) {
        GroupedTerm g{t.weight, {}};
        g.groups.push_back({{t.cut.pair[0], t.cut.pair[1]}, &t.group_state.matrix()});
        g.groups.push_back({{t.cut.single}, &t.single_state.matrix()});
        terms.push_back(std::move(g));
    }
    return simulate_grouped(terms, strategy.devices(), ensembles, full_distribution);
}

double mdi_value(const Decomposition &dec, const CorrelationTable &table) {
    if (dec.parties() != table.parties()) {
        throw std::invalid_argument("mdi_value: party count mismatch");
    }
    for (std::size_t p = 0; p < dec.parties(); ++p) {
        if (dec.ensembles()[p].labels() != table.labels()[p]) {
            throw std::invalid_argument("mdi_value: input labels differ for party " + std::to_string(p));
        }
    }
    double value = 0.0;
    const auto beta = dec.beta();
    const auto probs = table.p_all_ones();
    for (std::size_t r = 0; r < beta.size(); ++r) {
        value += beta[r] * probs[r];
    }
    return value;
}

GeneralFunctional functional_from_decomposition(const Decomposition &dec) {
    GeneralFunctional f;
    for (const auto &e : dec.ensembles()) {
        f.labels.push_back(e.labels());
    }
    const std::size_t patterns = std::size_t{1} << dec.parties();
    for (double b : dec.beta()) {
        std::vector<double> row(patterns, 0.0);
        row.back() = b;
        f.coefficients.push_back(std::move(row));
    }
    return f;
}

double general_value(const GeneralFunctional &f, const CorrelationTable &table) {
    if (!table.has_full()) {
        throw std::invalid_argument("general_value: table lacks full outcome distributions");
    }
    if (f.labels != table.labels() || f.coefficients.size() != table.rows()) {
        throw std::invalid_argument("general_value: label mismatch");
    }
    double value = 0.0;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        if (f.coefficients[r].size() != table.outcome_patterns()) {
            throw DimensionError("general_value: outcome pattern count mismatch");
        }
        for (std::size_t b = 0; b < table.outcome_patterns(); ++b) {
            value += f.coefficients[r][b] * table.full()[r][b];
        }
    }
    return value;
}

CorrelationTable apply_uniform_loss(const CorrelationTable &table, std::span<const double> eta) {
    const std::size_t n = table.parties();
    if (eta.size() != n) {
        throw DimensionError("apply_uniform_loss: one efficiency per party required");
    }
    double factor = 1.0;
    for (double e : eta) {
        if (!(e > 0.0 && e <= 1.0)) {
            throw std::invalid_argument("apply_uniform_loss: efficiency must lie in (0,1]");
        }
        factor *= e;
    }
    std::vector<double> ones(table.p_all_ones().begin(), table.p_all_ones().end());
    for (auto &p : ones) {
        p *= factor;
    }
    std::optional<std::vector<std::vector<double>>> full;
    if (table.has_full()) {
        const std::size_t patterns = table.outcome_patterns();
        full.emplace(table.rows(), std::vector<double>(patterns, 0.0));
        for (std::size_t r = 0; r < table.rows(); ++r) {
            const auto &src = table.full()[r];
            auto &dst = (*full)[r];
            for (std::size_t from = 0; from < patterns; ++from) {
                // Every subset `to` of the clicks in `from` survives.
                for (std::size_t to = from;; to = (to - 1) & from) {
                    double w = src[from];
                    for (std::size_t p = 0; p < n; ++p) {
                        const bool had = outcome_bit(from, p, n) == 1;
                        const bool kept = outcome_bit(to, p, n) == 1;
                        if (had) {
                            w *= kept ? eta[p] : 1.0 - eta[p];
                        }
                    }
                    dst[to] += w;
                    if (to == 0) {
                        break;
                    }
                }
            }
            ones[r] = dst.back();
        }
    }
    CorrelationTable out(table.labels(), std::move(ones), std::move(full));
    out.set_loss_convention("outcome0-folding");
    return out;
}

Povm precompose_channel(const Povm &povm, std::span<const ComplexMatrix> kraus) {
    const std::size_t d = povm.dim();
    ComplexMatrix budget(d, d);
    for (const auto &k : kraus) {
        if (k.rows() != d || k.cols() != d) {
            throw DimensionError("precompose_channel: Kraus operator dimension mismatch");
        }
        budget += k.adjoint() * k;
    }
    if (hermitian_eigenvalues(budget).back() > 1.0 + 1e-10) {
        throw std::invalid_argument("precompose_channel: channel increases trace");
    }
    std::vector<ComplexMatrix> elements(povm.outcomes(), ComplexMatrix(d, d));
    ComplexMatrix rest = ComplexMatrix::identity(d);
    for (std::size_t o = 1; o < povm.outcomes(); ++o) {
        for (const auto &k : kraus) {
            elements[o] += k.adjoint() * povm.element(o) * k;
        }
        rest -= elements[o];
    }
    elements[0] = std::move(rest);
    return Povm(std::move(elements));
}

}  // namespace mdiw
