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

#include "mdiw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mdiw {

namespace {

void require_finite(std::span<const Complex> entries) {
    for (const auto &z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream ss;
        ss << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw DimensionError(ss.str());
    }
}

void require_square(const ComplexMatrix &m, const char *what) {
    if (!m.is_square()) {
        throw DimensionError(std::string(what) + ": matrix is not square");
    }
}

// Mixed-radix digits of every flat index, leftmost factor most significant.
std::vector<std::size_t> strides_of(const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * dims[i];
    }
    return strides;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("ComplexMatrix: entry count does not match rows*cols");
    }
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r = *this;
    for (auto &z : r.data_) {
        z = std::conj(z);
    }
    return r;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += o.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    require_same_shape(*this, o, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= o.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("operator*: inner dimensions differ");
    }
    ComplexMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                r(i, j) += aik * b(k, j);
            }
        }
    }
    return r;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) {
    m *= s;
    return m;
}

ComplexMatrix operator*(ComplexMatrix m, Complex s) {
    m *= s;
    return m;
}

ComplexVector operator*(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw DimensionError("matrix-vector product: size mismatch");
    }
    ComplexVector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            acc += m(i, j) * v[j];
        }
        r[i] = acc;
    }
    return r;
}

DimsProfile::DimsProfile(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (auto d : dims_) {
        if (d == 0) {
            throw DimensionError("DimsProfile: subsystem dimension must be positive");
        }
    }
}

DimsProfile DimsProfile::uniform(std::size_t count, std::size_t d) {
    return DimsProfile(std::vector<std::size_t>(count, d));
}

std::size_t DimsProfile::total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

DimsProfile DimsProfile::concat(const DimsProfile &o) const {
    std::vector<std::size_t> d = dims_;
    d.insert(d.end(), o.dims_.begin(), o.dims_.end());
    return DimsProfile(std::move(d));
}

DimsProfile DimsProfile::select(std::span<const std::size_t> indices) const {
    std::vector<std::size_t> d;
    d.reserve(indices.size());
    for (auto i : indices) {
        if (i >= dims_.size()) {
            throw DimensionError("DimsProfile::select: index out of range");
        }
        d.push_back(dims_[i]);
    }
    return DimsProfile(std::move(d));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return r;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) {
        return ComplexMatrix::identity(1);
    }
    ComplexMatrix r = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) {
        r = kron(r, factors[i]);
    }
    return r;
}

ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b) {
    ComplexVector r;
    r.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            r.push_back(x * y);
        }
    }
    return r;
}

ComplexMatrix transpose(const ComplexMatrix &m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(j, i) = m(i, j);
        }
    }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const DimsProfile &dims, std::span<const std::size_t> keep) {
    require_square(m, "partial_trace");
    if (dims.total() != m.rows()) {
        throw DimensionError("partial_trace: dims do not match matrix size");
    }
    std::vector<bool> kept(dims.count(), false);
    for (auto k : keep) {
        if (k >= dims.count() || kept[k]) {
            throw DimensionError("partial_trace: invalid keep index");
        }
        kept[k] = true;
    }

    // Split every flat index into (kept part, traced part) once.
    const auto strides = strides_of(dims.values());
    std::vector<std::size_t> kept_dims, traced_dims;
    for (std::size_t s = 0; s < dims.count(); ++s) {
        (kept[s] ? kept_dims : traced_dims).push_back(dims[s]);
    }
    const auto kept_strides = strides_of(kept_dims);
    const auto traced_strides = strides_of(traced_dims);
    const std::size_t n = m.rows();
    std::vector<std::size_t> kept_index(n), traced_index(n);
    for (std::size_t flat = 0; flat < n; ++flat) {
        std::size_t ki = 0, ti = 0, kpos = 0, tpos = 0;
        for (std::size_t s = 0; s < dims.count(); ++s) {
            const std::size_t digit = (flat / strides[s]) % dims[s];
            if (kept[s]) {
                ki += digit * kept_strides[kpos++];
            } else {
                ti += digit * traced_strides[tpos++];
            }
        }
        kept_index[flat] = ki;
        traced_index[flat] = ti;
    }

    std::size_t out_dim = 1;
    for (auto d : kept_dims) {
        out_dim *= d;
    }
    ComplexMatrix r(out_dim, out_dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (traced_index[i] == traced_index[j]) {
                r(kept_index[i], kept_index[j]) += m(i, j);
            }
        }
    }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const DimsProfile &dims, std::initializer_list<std::size_t> keep) {
    const std::vector<std::size_t> k(keep);
    return partial_trace(m, dims, std::span<const std::size_t>(k));
}

ComplexMatrix permute_subsystems(const ComplexMatrix &m, const DimsProfile &dims, std::span<const std::size_t> perm) {
    require_square(m, "permute_subsystems");
    if (dims.total() != m.rows() || perm.size() != dims.count()) {
        throw DimensionError("permute_subsystems: dims/permutation mismatch");
    }
    std::vector<bool> seen(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) {
            throw DimensionError("permute_subsystems: not a permutation");
        }
        seen[p] = true;
    }
    const auto old_strides = strides_of(dims.values());
    const DimsProfile new_dims = dims.select(perm);
    const auto new_strides = strides_of(new_dims.values());

    // map[new flat index] = old flat index
    const std::size_t n = m.rows();
    std::vector<std::size_t> map(n);
    for (std::size_t flat = 0; flat < n; ++flat) {
        std::size_t old = 0;
        for (std::size_t j = 0; j < perm.size(); ++j) {
            const std::size_t digit = (flat / new_strides[j]) % new_dims[j];
            old += digit * old_strides[perm[j]];
        }
        map[flat] = old;
    }
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r(i, j) = m(map[i], map[j]);
        }
    }
    return r;
}

Complex trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace_product: shape mismatch");
    }
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t += a(i, j) * b(j, i);
        }
    }
    return t;
}

double frobenius_norm(const ComplexMatrix &m) {
    double s = 0.0;
    for (const auto &z : m.entries()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "frobenius_distance");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += std::norm(a.entries()[k] - b.entries()[k]);
    }
    return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix &m) {
    require_square(m, "hermiticity_defect");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return worst;
}

HermitianEigen hermitian_eigen(const ComplexMatrix &m) {
    require_square(m, "hermitian_eigen");
    if (hermiticity_defect(m) > TOL_HERM) {
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
    }
    const std::size_t n = m.rows();
    // Work on the exactly Hermitian part.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = JACOBI_OFFDIAG_TOL * std::max(1.0, frobenius_norm(a));

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps && off_norm() >= threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) {
                    continue;
                }
                // Phase diag(1, e^{-i phi}) makes the (p,q) entry real, then a
                // real Jacobi rotation annihilates it.
                const Complex phase = a(p, q) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex upp = c;
                const Complex upq = s;
                const Complex uqp = -s * std::conj(phase);
                const Complex uqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }
    if (off_norm() >= threshold) {
        throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    HermitianEigen out;
    out.sweeps = sweep;
    out.values.reserve(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values.push_back(a(order[c], order[c]).real());
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, c) = v(r, order[c]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    return hermitian_eigen(m).values;
}

ComplexMatrix clip_spectrum(const ComplexMatrix &m, double lo, double hi) {
    const auto eig = hermitian_eigen(m);
    const std::size_t n = m.rows();
    ComplexMatrix r(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = std::clamp(eig.values[k], lo, hi);
        if (lam == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = lam * eig.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                r(i, j) += vik * std::conj(eig.vectors(j, k));
            }
        }
    }
    return r;
}

double operator_norm_hermitian(const ComplexMatrix &m) {
    const auto values = hermitian_eigenvalues(m);
    return std::max(std::abs(values.front()), std::abs(values.back()));
}

std::string to_string(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::hermitian:
            return "hermitian";
        case MatrixKind::psd:
            return "psd";
        case MatrixKind::density:
            return "density";
        case MatrixKind::povm_element:
            return "povm_element";
    }
    return "unknown";
}

std::string ValidationReport::describe() const {
    std::ostringstream ss;
    ss << to_string(kind) << ": ";
    if (ok()) {
        ss << "pass";
        return ss.str();
    }
    ss << "fail";
    for (const auto &v : violations) {
        ss << " [" << v.predicate << " " << v.magnitude << "]";
    }
    return ss.str();
}

ValidationReport validate(const ComplexMatrix &m, MatrixKind kind) {
    require_square(m, "validate");
    ValidationReport report;
    report.kind = kind;

    const double defect = hermiticity_defect(m);
    if (defect > TOL_HERM) {
        report.violations.push_back({"hermitian", defect});
        // The spectrum is meaningless for a non-Hermitian matrix.
        return report;
    }
    if (kind == MatrixKind::hermitian) {
        return report;
    }
    const auto values = hermitian_eigenvalues(m);
    if (values.front() < -TOL_PSD) {
        report.violations.push_back({"min_eigenvalue", values.front()});
    }
    if (kind == MatrixKind::density) {
        const double trace_error = std::abs(m.trace() - Complex{1.0, 0.0});
        if (trace_error > TOL_TRACE) {
            report.violations.push_back({"unit_trace", trace_error});
        }
    }
    if (kind == MatrixKind::povm_element && values.back() > 1.0 + TOL_PSD) {
        report.violations.push_back({"max_eigenvalue", values.back()});
    }
    return report;
}

}  // namespace mdiw
