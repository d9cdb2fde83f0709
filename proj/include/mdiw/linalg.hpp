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

#ifndef MDIW_LINALG_HPP
#define MDIW_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdiw {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Maximum entrywise |m - m^dagger| accepted as Hermitian.
inline constexpr double TOL_HERM = 1e-10;
/// Allowed negative eigenvalue excursion for PSD checks.
inline constexpr double TOL_PSD = 1e-10;
/// Frobenius residual below which a decomposition counts as exact.
inline constexpr double TOL_RECON = 1e-10;
/// Unit-trace tolerance for density matrices.
inline constexpr double TOL_TRACE = 1e-10;
/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (scaled by max(1, ||m||_F)).
inline constexpr double JACOBI_OFFDIAG_TOL = 1e-13;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><v|.
    static ComplexMatrix projector(std::span<const Complex> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    std::size_t size() const { return data_.size(); }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    Complex trace() const;
    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(Complex s);

    bool operator==(const ComplexMatrix &o) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
ComplexVector operator*(const ComplexMatrix &m, std::span<const Complex> v);

/// Ordered subsystem dimensions. Leftmost factor is the slowest-varying index.
class DimsProfile {
   public:
    DimsProfile() = default;
    explicit DimsProfile(std::vector<std::size_t> dims);
    DimsProfile(std::initializer_list<std::size_t> dims) : DimsProfile(std::vector<std::size_t>(dims)) {}

    /// `count` copies of `d`.
    static DimsProfile uniform(std::size_t count, std::size_t d);

    std::size_t count() const { return dims_.size(); }
    std::size_t operator[](std::size_t i) const { return dims_[i]; }
    std::size_t total() const;
    const std::vector<std::size_t> &values() const { return dims_; }

    DimsProfile concat(const DimsProfile &o) const;
    DimsProfile select(std::span<const std::size_t> indices) const;

    bool operator==(const DimsProfile &o) const = default;

   private:
    std::vector<std::size_t> dims_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);
ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);

/// Entry (i,j) -> (j,i) without conjugation (computational basis).
ComplexMatrix transpose(const ComplexMatrix &m);

/// Traces out every subsystem not listed in `keep`. Kept factors retain
/// their relative order.
ComplexMatrix partial_trace(const ComplexMatrix &m, const DimsProfile &dims, std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix &m, const DimsProfile &dims, std::initializer_list<std::size_t> keep);

/// Reorders tensor factors: subsystem j of the result is subsystem perm[j]
/// of the input.
ComplexMatrix permute_subsystems(const ComplexMatrix &m, const DimsProfile &dims, std::span<const std::size_t> perm);

/// tr[a b] without forming the product.
Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b);

double frobenius_norm(const ComplexMatrix &m);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// max_ij |m_ij - conj(m_ji)|.
double hermiticity_defect(const ComplexMatrix &m);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
    int sweeps = 0;
};

/// Cyclic complex Jacobi iteration. Throws DimensionError for non-square and
/// std::invalid_argument for non-Hermitian input.
HermitianEigen hermitian_eigen(const ComplexMatrix &m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

/// V f(Lambda) V^dagger with eigenvalues clamped into [lo, hi].
ComplexMatrix clip_spectrum(const ComplexMatrix &m, double lo, double hi);

/// Largest eigenvalue of a Hermitian matrix.
double operator_norm_hermitian(const ComplexMatrix &m);

enum class MatrixKind { hermitian, psd, density, povm_element };

/// A failed predicate and the offending quantity (the eigenvalue, trace
/// error or Hermiticity defect that tripped it).
struct Violation {
    std::string predicate;
    double magnitude = 0.0;
};

struct ValidationReport {
    MatrixKind kind = MatrixKind::hermitian;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string describe() const;
};

/// Lists every violated predicate for `kind`; never throws for square input.
ValidationReport validate(const ComplexMatrix &m, MatrixKind kind);

std::string to_string(MatrixKind kind);

}  // namespace mdiw

#endif
