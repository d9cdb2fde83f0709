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

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace mdiw {

namespace {

// Odometer over a mixed-radix index, last digit fastest.
bool advance(std::vector<std::size_t> &index, const std::vector<std::size_t> &shape) {
    for (std::size_t p = index.size(); p-- > 0;) {
        if (++index[p] < shape[p]) {
            return true;
        }
        index[p] = 0;
    }
    return false;
}

ComplexMatrix product_of_transposes(const std::vector<InputEnsemble> &ensembles, const std::vector<std::size_t> &index) {
    std::vector<ComplexMatrix> factors;
    factors.reserve(ensembles.size());
    for (std::size_t p = 0; p < ensembles.size(); ++p) {
        factors.push_back(transpose(ensembles[p][index[p]].state.matrix()));
    }
    return kron_all(factors);
}

DimsProfile ensemble_dims(const std::vector<InputEnsemble> &ensembles) {
    std::vector<std::size_t> d;
    for (const auto &e : ensembles) {
        d.push_back(e.dim());
    }
    return DimsProfile(std::move(d));
}

Decomposition with_measured_residual(const Witness &w, std::vector<InputEnsemble> ensembles, std::vector<double> beta,
                                     std::string source) {
    Decomposition dec(std::move(ensembles), std::move(beta), 0.0, std::move(source));
    const double residual = frobenius_distance(reconstruct(dec), w.matrix());
    return dec.with_beta({dec.beta().begin(), dec.beta().end()}, residual, dec.source());
}

// floor((s - 1) / 2) rounded toward negative infinity.
int half_floor(int s) {
    return static_cast<int>(std::floor((s - 1) / 2.0));
}

double parity_sign(int k) {
    return (k % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

Witness::Witness(ComplexMatrix matrix, DimsProfile dims, WitnessKind kind)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), kind_(kind) {
    if (!matrix_.is_square() || dims_.total() != matrix_.rows()) {
        throw DimensionError("Witness: dims do not match matrix");
    }
    if (dims_.count() < 2) {
        throw DimensionError("Witness: need at least two parties");
    }
    const double defect = hermiticity_defect(matrix_);
    if (defect > TOL_HERM) {
        std::ostringstream ss;
        ss << "Witness: matrix is not Hermitian (defect " << defect << ")";
        throw std::invalid_argument(ss.str());
    }
}

Witness singlet_witness() {
    ComplexMatrix w = 0.5 * ComplexMatrix::identity(4);
    w -= ComplexMatrix::projector(singlet_vector());
    return Witness(std::move(w), DimsProfile{2, 2}, WitnessKind::bipartite_separability);
}

Witness ghz_witness() {
    ComplexMatrix w = 0.5 * ComplexMatrix::identity(8);
    w -= ComplexMatrix::projector(ghz_vector());
    return Witness(std::move(w), DimsProfile{2, 2, 2}, WitnessKind::genuine_multipartite);
}

double witness_value(const Witness &w, const DensityMatrix &rho) {
    if (w.matrix().rows() != rho.dim()) {
        throw DimensionError("witness_value: witness and state sizes differ");
    }
    const Complex t = trace_product(w.matrix(), rho.matrix());
    if (std::abs(t.imag()) > 1e-10) {
        throw std::domain_error("witness_value: imaginary residue above tolerance");
    }
    return t.real();
}

Decomposition::Decomposition(std::vector<InputEnsemble> ensembles, std::vector<double> beta, double residual,
                             std::string source)
    : ensembles_(std::move(ensembles)), beta_(std::move(beta)), residual_(residual), source_(std::move(source)) {
    if (ensembles_.empty()) {
        throw std::invalid_argument("Decomposition: no ensembles");
    }
    std::size_t expected = 1;
    for (const auto &e : ensembles_) {
        expected *= e.size();
    }
    if (beta_.size() != expected) {
        throw DimensionError("Decomposition: beta size does not match ensemble sizes");
    }
    for (double b : beta_) {
        if (!std::isfinite(b)) {
            throw std::invalid_argument("Decomposition: non-finite coefficient");
        }
    }
}

std::vector<std::size_t> Decomposition::shape() const {
    std::vector<std::size_t> s;
    s.reserve(ensembles_.size());
    for (const auto &e : ensembles_) {
        s.push_back(e.size());
    }
    return s;
}

std::size_t Decomposition::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != ensembles_.size()) {
        throw DimensionError("Decomposition: index length differs from party count");
    }
    std::size_t flat = 0;
    for (std::size_t p = 0; p < index.size(); ++p) {
        if (index[p] >= ensembles_[p].size()) {
            throw std::out_of_range("Decomposition: label index out of range");
        }
        flat = flat * ensembles_[p].size() + index[p];
    }
    return flat;
}

double Decomposition::at(std::span<const std::size_t> index) const {
    return beta_[flat_index(index)];
}

double Decomposition::at(std::initializer_list<std::size_t> index) const {
    const std::vector<std::size_t> i(index);
    return at(std::span<const std::size_t>(i));
}

Decomposition Decomposition::with_beta(std::vector<double> beta, double residual, std::string source) const {
    return Decomposition(ensembles_, std::move(beta), residual, std::move(source));
}

std::vector<double> hermitian_coordinates(const ComplexMatrix &h) {
    const std::size_t n = h.rows();
    std::vector<double> c;
    c.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        c.push_back(h(i, i).real());
    }
    const double r2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            c.push_back(r2 * h(i, j).real());
            c.push_back(r2 * h(i, j).imag());
        }
    }
    return c;
}

Decomposition decompose(const Witness &w, const std::vector<InputEnsemble> &ensembles) {
    if (ensembles.size() != w.parties()) {
        throw DimensionError("decompose: ensemble count differs from witness party count");
    }
    if (ensemble_dims(ensembles) != w.dims()) {
        throw DimensionError("decompose: ensemble dimensions differ from witness dims");
    }

    std::vector<std::size_t> shape;
    std::size_t columns = 1;
    for (const auto &e : ensembles) {
        shape.push_back(e.size());
        columns *= e.size();
    }
    const std::size_t n = w.matrix().rows();
    Eigen::MatrixXd system(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(columns));
    std::vector<std::size_t> index(ensembles.size(), 0);
    std::size_t col = 0;
    do {
        const auto coords = hermitian_coordinates(product_of_transposes(ensembles, index));
        for (std::size_t r = 0; r < coords.size(); ++r) {
            system(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) = coords[r];
        }
        ++col;
    } while (advance(index, shape));

    const auto target_coords = hermitian_coordinates(w.matrix());
    const Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(target_coords.data(),
                                                                     static_cast<Eigen::Index>(target_coords.size()));
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system);
    const Eigen::VectorXd solution = cod.solve(target);

    std::vector<double> beta(solution.data(), solution.data() + solution.size());
    return with_measured_residual(w, ensembles, std::move(beta), "solve");
}

ComplexMatrix reconstruct(const Decomposition &dec) {
    const auto &ensembles = dec.ensembles();
    const auto shape = dec.shape();
    std::size_t n = 1;
    for (const auto &e : ensembles) {
        n *= e.dim();
    }
    ComplexMatrix out(n, n);
    std::vector<std::size_t> index(ensembles.size(), 0);
    std::size_t flat = 0;
    do {
        const double b = dec.beta()[flat++];
        if (b != 0.0) {
            out += b * product_of_transposes(ensembles, index);
        }
    } while (advance(index, shape));
    return out;
}

Decomposition tetrahedron_beta() {
    std::vector<double> beta(16);
    for (std::size_t s = 0; s < 4; ++s) {
        for (std::size_t t = 0; t < 4; ++t) {
            beta[s * 4 + t] = (s == t) ? 5.0 / 8.0 : -1.0 / 8.0;
        }
    }
    return with_measured_residual(singlet_witness(), {tetrahedron_ensemble(), tetrahedron_ensemble()},
                                  std::move(beta), "catalog");
}

Decomposition pauli6_beta() {
    // Ensemble order: index = 3 * s1 + (s2 - 1).
    std::vector<double> beta(36);
    for (std::size_t s = 0; s < 6; ++s) {
        for (std::size_t t = 0; t < 6; ++t) {
            const std::size_t s1 = s / 3, s2 = s % 3, t1 = t / 3, t2 = t % 3;
            beta[s * 6 + t] = (s2 == t2) ? (3.0 * (s1 == t1 ? 1.0 : 0.0) - 1.0) / 6.0 : 0.0;
        }
    }
    return with_measured_residual(singlet_witness(), {pauli6_ensemble(), pauli6_ensemble()}, std::move(beta),
                                  "catalog");
}

Decomposition ghz_beta() {
    const double root3 = std::sqrt(3.0);
    std::vector<double> beta(64);
    for (int s = 0; s < 4; ++s) {
        for (int t = 0; t < 4; ++t) {
            for (int u = 0; u < 4; ++u) {
                const int fs = half_floor(s), ft = half_floor(t), fu = half_floor(u);
                const double outer = parity_sign(fs * ft + fs * fu + ft * fu + 1);
                const double inner = parity_sign(fs + ft + fu) + parity_sign(s + t + u) * root3;
                beta[(s * 4 + t) * 4 + u] = 3.0 / 32.0 * outer * inner;
            }
        }
    }
    return with_measured_residual(ghz_witness(), {tetrahedron_ensemble(), tetrahedron_ensemble(), tetrahedron_ensemble()},
                                  std::move(beta), "catalog");
}

GhzDecompositions ghz_decompositions() {
    GhzDecompositions out{ghz_beta(), std::nullopt};
    if (!out.table.exact()) {
        out.corrected = decompose(ghz_witness(), out.table.ensembles());
    }
    return out;
}

}  // namespace mdiw
