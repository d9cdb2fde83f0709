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

#ifndef MDIW_WITNESS_HPP
#define MDIW_WITNESS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdiw/linalg.hpp"
#include "mdiw/states.hpp"

namespace mdiw {

enum class WitnessKind { bipartite_separability, genuine_multipartite };

/// Hermitian operator over a declared party structure. The kind is metadata:
/// nothing beyond the party count is enforced.
class Witness {
   public:
    Witness(ComplexMatrix matrix, DimsProfile dims, WitnessKind kind);

    const ComplexMatrix &matrix() const { return matrix_; }
    const DimsProfile &dims() const { return dims_; }
    WitnessKind kind() const { return kind_; }
    std::size_t parties() const { return dims_.count(); }

   private:
    ComplexMatrix matrix_;
    DimsProfile dims_;
    WitnessKind kind_;
};

/// 1/2 - |Psi-><Psi-| on two qubits.
Witness singlet_witness();
/// 1/2 - |GHZ><GHZ| on three qubits.
Witness ghz_witness();

/// tr[W rho]. Throws DimensionError on size mismatch and std::domain_error if
/// the imaginary residue exceeds 1e-10.
double witness_value(const Witness &w, const DensityMatrix &rho);

/// Coefficient tensor beta over one input ensemble per party; the operator it
/// represents is sum beta_{s,t,..} tau_s^T (x) omega_t^T (x) ...
/// Coefficients are stored row-major, first party slowest.
class Decomposition {
   public:
    Decomposition(std::vector<InputEnsemble> ensembles, std::vector<double> beta, double residual,
                  std::string source);

    const std::vector<InputEnsemble> &ensembles() const { return ensembles_; }
    std::size_t parties() const { return ensembles_.size(); }
    std::vector<std::size_t> shape() const;
    std::span<const double> beta() const { return beta_; }
    double at(std::span<const std::size_t> index) const;
    double at(std::initializer_list<std::size_t> index) const;
    std::size_t flat_index(std::span<const std::size_t> index) const;

    double residual() const { return residual_; }
    bool exact() const { return residual_ <= TOL_RECON; }
    /// "catalog", "solve" or "custom".
    const std::string &source() const { return source_; }

    Decomposition with_beta(std::vector<double> beta, double residual, std::string source) const;

   private:
    std::vector<InputEnsemble> ensembles_;
    std::vector<double> beta_;
    double residual_;
    std::string source_;
};

/// Minimum-norm least-squares beta, solved in the real vector space of
/// Hermitian operators so every coefficient is real. A residual above
/// TOL_RECON marks the result inexact; it is not an error.
Decomposition decompose(const Witness &w, const std::vector<InputEnsemble> &ensembles);

/// sum beta tau_s^T (x) omega_t^T (x) ...
ComplexMatrix reconstruct(const Decomposition &dec);

/// beta = 5/8 on the diagonal, -1/8 off it, over tetrahedron x tetrahedron.
Decomposition tetrahedron_beta();
/// beta = delta_{s2,t2} (3 delta_{s1,t1} - 1)/6 over pauli6 x pauli6.
Decomposition pauli6_beta();
/// Closed-form GHZ coefficients over tetrahedron^3, s,t,u = 0..3, floor
/// toward negative infinity.
Decomposition ghz_beta();

/// The closed-form GHZ table with its measured residual, plus a solver
/// recomputation when that residual exceeds TOL_RECON.
struct GhzDecompositions {
    Decomposition table;
    std::optional<Decomposition> corrected;

    const Decomposition &preferred() const { return corrected ? *corrected : table; }
    bool table_exact() const { return table.exact(); }
};
GhzDecompositions ghz_decompositions();

/// Real Hermitian coordinates: diagonal entries, then sqrt2 Re / sqrt2 Im of
/// the strict upper triangle. Frobenius-isometric.
std::vector<double> hermitian_coordinates(const ComplexMatrix &h);

}  // namespace mdiw

#endif
