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

#ifndef MDIW_STATES_HPP
#define MDIW_STATES_HPP

#include <array>
#include <string>
#include <vector>

#include "mdiw/linalg.hpp"

namespace mdiw {

struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A validated quantum state: Hermitian, PSD and unit trace within the
/// library tolerances. Construction throws InvalidState otherwise.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix m);
    DensityMatrix(ComplexMatrix m, DimsProfile dims);

    const ComplexMatrix &matrix() const { return matrix_; }
    const DimsProfile &dims() const { return dims_; }
    std::size_t dim() const { return matrix_.rows(); }

   private:
    ComplexMatrix matrix_;
    DimsProfile dims_;
};

struct LabeledState {
    std::string label;
    DensityMatrix state;
};

/// Quantum inputs handed to one party. `name` identifies catalog ensembles
/// ("tetrahedron", "pauli6") and is "custom" otherwise.
class InputEnsemble {
   public:
    InputEnsemble(std::string name, std::vector<LabeledState> members);

    const std::string &name() const { return name_; }
    std::size_t size() const { return members_.size(); }
    std::size_t dim() const { return members_.front().state.dim(); }
    const LabeledState &operator[](std::size_t i) const { return members_[i]; }
    const std::vector<LabeledState> &members() const { return members_; }
    std::vector<std::string> labels() const;

   private:
    std::string name_;
    std::vector<LabeledState> members_;
};

using BlochVector = std::array<double, 3>;

/// sigma_0 = identity, sigma_1..3 = X, Y, Z.
ComplexMatrix pauli(int k);

/// (1 + n.sigma)/2. Throws InvalidState for |n| > 1.
DensityMatrix bloch_state(const BlochVector &n);

/// Bloch vector of a qubit operator: n_k = tr[sigma_k m].
BlochVector bloch_vector(const ComplexMatrix &m);

/// tau_s = sigma_s (1 + n.sigma)/2 sigma_s with n = (1,1,1)/sqrt3, s = 0..3.
InputEnsemble tetrahedron_ensemble();

/// (1 + (-1)^s1 sigma_s2)/2 ordered (s1, s2) with s1 in {0,1} outer and
/// s2 in {1,2,3} inner; labels "+x","+y","+z","-x","-y","-z".
InputEnsemble pauli6_ensemble();

/// Resolves "tetrahedron" or "pauli6".
InputEnsemble ensemble_by_name(const std::string &name);

/// (|01> - |10>)/sqrt2.
ComplexVector singlet_vector();
/// (|000> + |111>)/sqrt2.
ComplexVector ghz_vector();

/// v |Psi-><Psi-| + (1 - v) 1/4.
DensityMatrix werner_state(double v);
/// v |GHZ><GHZ| + (1 - v) 1/8.
DensityMatrix noisy_ghz(double v);

/// (1/sqrt d) sum_i |ii>.
ComplexVector max_entangled(std::size_t d);

}  // namespace mdiw

#endif
