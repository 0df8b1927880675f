#include "qmetro/povm.hpp"

#include <cmath>
#include <string>

#include "qmetro/error.hpp"
#include "qmetro/numerics.hpp"
#include "qmetro/tolerances.hpp"

namespace qmetro {

Povm Povm::from_elements(std::vector<ComplexMatrix> elements) {
    if (elements.empty()) {
        throw Error(ErrorKind::InvalidState, "POVM has no elements");
    }
    const std::size_t dim = elements.front().dim();
    ComplexMatrix sum(dim);
    for (const auto &e : elements) {
        if (e.dim() != dim) {
            throw Error(ErrorKind::DimMismatch, "POVM elements differ in dimension");
        }
        const auto eig = hermitian_eig(e);
        if (eig.eigenvalues.front() < tol::psd_eigenvalue) {
            throw Error(ErrorKind::NotPsd, "POVM element has eigenvalue " +
                                               std::to_string(eig.eigenvalues.front()));
        }
        sum += e;
    }
    if ((sum - ComplexMatrix::identity(dim)).frobenius_norm() > tol::povm_completeness) {
        throw Error(ErrorKind::InvalidState, "POVM elements do not sum to identity");
    }
    std::vector<Element> out(std::make_move_iterator(elements.begin()),
                             std::make_move_iterator(elements.end()));
    return Povm(dim, std::move(out));
}

Povm Povm::from_kets(std::vector<Ket> kets) {
    if (kets.empty()) {
        throw Error(ErrorKind::InvalidState, "POVM has no elements");
    }
    const std::size_t dim = kets.front().size();
    ComplexMatrix sum(dim);
    for (const auto &v : kets) {
        if (v.size() != dim) {
            throw Error(ErrorKind::DimMismatch, "POVM kets differ in dimension");
        }
    }
    // Σ v vᵀ* = W W† with W the kets as columns
    ComplexMatrix w(dim);
    if (kets.size() == dim) {
        for (std::size_t k = 0; k < dim; ++k) {
            for (std::size_t i = 0; i < dim; ++i) {
                w(i, k) = kets[k][i];
            }
        }
        sum = w * w.adjoint();
    } else {
        for (const auto &v : kets) {
            sum += ComplexMatrix::outer(v);
        }
    }
    if ((sum - ComplexMatrix::identity(dim)).frobenius_norm() > tol::povm_completeness) {
        throw Error(ErrorKind::InvalidState, "POVM elements do not sum to identity");
    }
    std::vector<Element> out;
    out.reserve(kets.size());
    for (auto &v : kets) {
        out.emplace_back(std::move(v));
    }
    return Povm(dim, std::move(out));
}

Povm Povm::from_basis(const ComplexMatrix &unitary) {
    std::vector<Ket> kets;
    kets.reserve(unitary.dim());
    for (std::size_t k = 0; k < unitary.dim(); ++k) {
        kets.push_back(unitary.column(k));
    }
    return from_kets(std::move(kets));
}

Povm Povm::computational_basis(std::size_t qubits) {
    return from_basis(ComplexMatrix::identity(std::size_t{1} << qubits));
}

Povm Povm::trivial(std::size_t dim) { return from_elements({ComplexMatrix::identity(dim)}); }

ComplexMatrix Povm::element(std::size_t k) const {
    if (const auto *m = std::get_if<ComplexMatrix>(&elements_.at(k))) {
        return *m;
    }
    return ComplexMatrix::outer(std::get<Ket>(elements_[k]));
}

ComplexMatrix Povm::sqrt_element(std::size_t k) const {
    if (const auto *m = std::get_if<ComplexMatrix>(&elements_.at(k))) {
        return psd_sqrt(*m);
    }
    const Ket &v = std::get<Ket>(elements_[k]);
    double norm2 = 0.0;
    for (const auto &z : v) {
        norm2 += std::norm(z);
    }
    ComplexMatrix out = ComplexMatrix::outer(v);
    if (norm2 > 0.0) {
        out *= 1.0 / std::sqrt(norm2);
    }
    return out;
}

cplx Povm::expectation(std::size_t k, const ComplexMatrix &a) const {
    if (a.dim() != dim_) {
        throw Error(ErrorKind::DimMismatch, "operator and POVM dimensions differ");
    }
    if (const auto *m = std::get_if<ComplexMatrix>(&elements_.at(k))) {
        // tr(Π A) = Σ_ij Π_ij A_ji
        cplx s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                s += (*m)(i, j) * a(j, i);
            }
        }
        return s;
    }
    const Ket &v = std::get<Ket>(elements_[k]);
    cplx s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            row += a(i, j) * v[j];
        }
        s += std::conj(v[i]) * row;
    }
    return s;
}

} // namespace qmetro
