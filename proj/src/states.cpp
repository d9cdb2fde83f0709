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
#include <set>

namespace mdiw {

namespace {

void require_unit_interval(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": v must lie in [0,1]");
    }
}

DensityMatrix mix_with_identity(const ComplexVector &pure, double v, DimsProfile dims) {
    const std::size_t n = pure.size();
    ComplexMatrix rho = v * ComplexMatrix::projector(pure);
    rho += ((1.0 - v) / static_cast<double>(n)) * ComplexMatrix::identity(n);
    return DensityMatrix(std::move(rho), std::move(dims));
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(m, DimsProfile{m.rows()}) {
}

DensityMatrix::DensityMatrix(ComplexMatrix m, DimsProfile dims) : matrix_(std::move(m)), dims_(std::move(dims)) {
    if (!matrix_.is_square() || dims_.total() != matrix_.rows()) {
        throw DimensionError("DensityMatrix: dims do not match matrix");
    }
    const auto report = validate(matrix_, MatrixKind::density);
    if (!report.ok()) {
        throw InvalidState("DensityMatrix: " + report.describe());
    }
}

InputEnsemble::InputEnsemble(std::string name, std::vector<LabeledState> members)
    : name_(std::move(name)), members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("InputEnsemble: no members");
    }
    std::set<std::string> seen;
    for (const auto &m : members_) {
        if (m.state.dim() != members_.front().state.dim()) {
            throw DimensionError("InputEnsemble: members differ in dimension");
        }
        if (!seen.insert(m.label).second) {
            throw std::invalid_argument("InputEnsemble: duplicate label " + m.label);
        }
    }
}

std::vector<std::string> InputEnsemble::labels() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (const auto &m : members_) {
        out.push_back(m.label);
    }
    return out;
}

ComplexMatrix pauli(int k) {
    using namespace std::complex_literals;
    switch (k) {
        case 0:
            return {{1.0, 0.0}, {0.0, 1.0}};
        case 1:
            return {{0.0, 1.0}, {1.0, 0.0}};
        case 2:
            return {{0.0, -1i}, {1i, 0.0}};
        case 3:
            return {{1.0, 0.0}, {0.0, -1.0}};
        default:
            throw std::out_of_range("pauli: index must be 0..3");
    }
}

DensityMatrix bloch_state(const BlochVector &n) {
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (len > 1.0 + 1e-12) {
        throw InvalidState("bloch_state: |n| > 1");
    }
    ComplexMatrix m = pauli(0);
    for (int k = 1; k <= 3; ++k) {
        m += n[k - 1] * pauli(k);
    }
    m *= 0.5;
    return DensityMatrix(std::move(m));
}

BlochVector bloch_vector(const ComplexMatrix &m) {
    BlochVector n{};
    for (int k = 1; k <= 3; ++k) {
        n[k - 1] = trace_product(pauli(k), m).real();
    }
    return n;
}

InputEnsemble tetrahedron_ensemble() {
    const double c = 1.0 / std::sqrt(3.0);
    const ComplexMatrix base = bloch_state({c, c, c}).matrix();
    std::vector<LabeledState> members;
    for (int s = 0; s < 4; ++s) {
        const ComplexMatrix sig = pauli(s);
        members.push_back({std::to_string(s), DensityMatrix(sig * base * sig)});
    }
    return InputEnsemble("tetrahedron", std::move(members));
}

InputEnsemble pauli6_ensemble() {
    static const char *axes = "xyz";
    std::vector<LabeledState> members;
    for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 1; s2 <= 3; ++s2) {
            ComplexMatrix m = pauli(0) + (s1 == 0 ? 1.0 : -1.0) * pauli(s2);
            m *= 0.5;
            std::string label = std::string(s1 == 0 ? "+" : "-") + axes[s2 - 1];
            members.push_back({std::move(label), DensityMatrix(std::move(m))});
        }
    }
    return InputEnsemble("pauli6", std::move(members));
}

InputEnsemble ensemble_by_name(const std::string &name) {
    if (name == "tetrahedron") {
        return tetrahedron_ensemble();
    }
    if (name == "pauli6") {
        return pauli6_ensemble();
    }
    throw std::invalid_argument("unknown ensemble: " + name);
}

ComplexVector singlet_vector() {
    const double r = 1.0 / std::sqrt(2.0);
    return {0.0, r, -r, 0.0};
}

ComplexVector ghz_vector() {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector v(8, 0.0);
    v[0] = r;
    v[7] = r;
    return v;
}

DensityMatrix werner_state(double v) {
    require_unit_interval(v, "werner_state");
    return mix_with_identity(singlet_vector(), v, DimsProfile{2, 2});
}

DensityMatrix noisy_ghz(double v) {
    require_unit_interval(v, "noisy_ghz");
    return mix_with_identity(ghz_vector(), v, DimsProfile{2, 2, 2});
}

ComplexVector max_entangled(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("max_entangled: d must be >= 2");
    }
    ComplexVector v(d * d, 0.0);
    const double r = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        v[i * d + i] = r;
    }
    return v;
}

}  // namespace mdiw
