#include "qmetro/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmetro/error.hpp"
#include "qmetro/kernels.hpp"

namespace qmetro {

const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::BadTable: return "BadTable";
    case ErrorKind::SingularFisher: return "SingularFisher";
    case ErrorKind::IncompletePolicy: return "IncompletePolicy";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorKind::DimMismatch, "expected " + std::to_string(dim_ * dim_) +
                                                " entries, got " + std::to_string(data_.size()));
    }
    if (!all_finite()) {
        throw Error(ErrorKind::InvalidState, "matrix has non-finite entries");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket) { return outer(ket, ket); }

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
    if (u.size() != v.size()) {
        throw Error(ErrorKind::DimMismatch, "outer product of vectors with different lengths");
    }
    ComplexMatrix m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

cplx ComplexMatrix::trace() const noexcept {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const cplx &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

std::vector<cplx> ComplexMatrix::column(std::size_t col) const {
    std::vector<cplx> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        out[i] = (*this)(i, col);
    }
    return out;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
    if (rhs.dim_ != dim_) {
        throw Error(ErrorKind::DimMismatch, "matrix sum");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += rhs.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
    if (rhs.dim_ != dim_) {
        throw Error(ErrorKind::DimMismatch, "matrix difference");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= rhs.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx scale) noexcept {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix lhs, cplx scale) { return lhs *= scale; }
ComplexMatrix operator*(cplx scale, ComplexMatrix rhs) { return rhs *= scale; }

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    return kernels::matmul(lhs, rhs);
}

cplx frobenius_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimMismatch, "inner product");
    }
    cplx s = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) {
        s += std::conj(da[k]) * db[k];
    }
    return s;
}

} // namespace qmetro
