#include "qmetro/probes.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qmetro/error.hpp"
#include "qmetro/numerics.hpp"
#include "qmetro/tolerances.hpp"

namespace qmetro {

namespace {

std::size_t qubits_for_dim(std::size_t dim) {
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw Error(ErrorKind::InvalidState,
                    "dimension " + std::to_string(dim) + " is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

void check_trace_and_hermiticity(const ComplexMatrix &m) {
    if (!m.all_finite()) {
        throw Error(ErrorKind::InvalidState, "non-finite entries");
    }
    if (!is_hermitian(m, tol::hermitian)) {
        throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
    }
    const cplx tr = m.trace();
    if (std::abs(tr - 1.0) > tol::trace_one) {
        throw Error(ErrorKind::InvalidState, "trace " + std::to_string(tr.real()));
    }
}

std::vector<cplx> ghz_ket(std::size_t n) {
    std::vector<cplx> ket(std::size_t{1} << n);
    ket.front() = std::numbers::sqrt2 / 2;
    ket.back() += std::numbers::sqrt2 / 2; // n = 0 is rejected earlier; n = 1 gives |+⟩
    return ket;
}

} // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    const std::size_t n = qubits_for_dim(m.dim());
    check_trace_and_hermiticity(m);
    const auto eig = hermitian_eig(m);
    if (eig.eigenvalues.front() < tol::psd_eigenvalue) {
        throw Error(ErrorKind::InvalidState,
                    "negative eigenvalue " + std::to_string(eig.eigenvalues.front()));
    }
    return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix m) {
    const std::size_t n = qubits_for_dim(m.dim());
    return DensityMatrix(std::move(m), n);
}

double DensityMatrix::purity() const { return frobenius_inner(mat_, mat_).real(); }

ProbeFamily::ProbeFamily(DensityMatrix initial, ComplexMatrix generator, int sign)
    : initial_(std::move(initial)), generator_(std::move(generator)), sign_(sign) {
    if (generator_.dim() != initial_.dim()) {
        throw Error(ErrorKind::DimMismatch, "generator and state dimensions differ");
    }
    if (!is_hermitian(generator_, tol::hermitian)) {
        throw Error(ErrorKind::NotHermitian, "generator");
    }
    if (sign_ != 1 && sign_ != -1) {
        throw Error(ErrorKind::DomainError, "sign must be +1 or -1");
    }
}

DensityMatrix bell00() { return nghz(2); }

DensityMatrix nghz(std::size_t n) {
    if (n < 1) {
        throw Error(ErrorKind::DomainError, "NGHZ needs at least one qubit");
    }
    if (n > 16) {
        throw Error(ErrorKind::DomainError, "NGHZ dense state too large");
    }
    const auto ket = ghz_ket(n);
    return DensityMatrix::assume_valid(ComplexMatrix::outer(ket));
}

DensityMatrix werner(const WernerSpec &spec) {
    if (spec.n_qubits < 1 || spec.n_qubits > 16) {
        throw Error(ErrorKind::DomainError, "Werner qubit count out of range");
    }
    if (!(spec.eta >= 0.0 && spec.eta <= 1.0)) {
        throw Error(ErrorKind::DomainError, "eta must lie in [0, 1]");
    }
    const std::size_t dim = std::size_t{1} << spec.n_qubits;
    ComplexMatrix rho = ComplexMatrix::outer(ghz_ket(spec.n_qubits));
    rho *= spec.eta;
    const double noise = (1.0 - spec.eta) / static_cast<double>(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        rho(i, i) += noise;
    }
    return DensityMatrix::assume_valid(std::move(rho));
}

DensityMatrix classically_correlated(const ClassicalTable &table) {
    if (table.parties < 1 || table.parties > 12) {
        throw Error(ErrorKind::BadTable, "party count out of range");
    }
    const std::size_t dim = std::size_t{1} << table.parties;
    if (table.probs.size() != dim) {
        throw Error(ErrorKind::BadTable, "expected " + std::to_string(dim) + " probabilities");
    }
    double total = 0.0;
    for (double p : table.probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw Error(ErrorKind::BadTable, "probabilities must be finite and nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > tol::table_sum) {
        throw Error(ErrorKind::BadTable, "probabilities sum to " + std::to_string(total));
    }
    std::vector<ComplexMatrix> bases = table.local_bases;
    if (bases.empty()) {
        bases.assign(table.parties, ComplexMatrix::identity(2));
    }
    if (bases.size() != table.parties) {
        throw Error(ErrorKind::BadTable, "one local basis per party required");
    }
    for (const auto &b : bases) {
        if (b.dim() != 2) {
            throw Error(ErrorKind::BadTable, "local bases must be 2x2");
        }
        const ComplexMatrix gram = b.adjoint() * b - ComplexMatrix::identity(2);
        if (gram.frobenius_norm() > tol::basis_orthonormal) {
            throw Error(ErrorKind::BadTable, "local basis is not orthonormal");
        }
    }
    // ρ = B (diag q) B† with B the product basis
    const ComplexMatrix product = tensor(bases);
    ComplexMatrix scaled = product;
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            scaled(i, j) *= table.probs[j];
        }
    }
    ComplexMatrix rho = scaled * product.adjoint();
    // exact Hermitian symmetrisation of rounding
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix::assume_valid(std::move(rho));
}

ComplexMatrix phase_generator(std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> diag(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        diag[i] = static_cast<double>(std::popcount(i));
    }
    return ComplexMatrix::diagonal(std::span<const double>(diag));
}

ProbeFamily phase_family(DensityMatrix initial, int sign) {
    ComplexMatrix h = phase_generator(initial.qubit_count());
    return ProbeFamily(std::move(initial), std::move(h), sign);
}

DensityMatrix encode(const ProbeFamily &family, double phi) {
    if (phi == 0.0) {
        return family.initial();
    }
    const ComplexMatrix u = unitary_from_generator(family.generator(), phi, family.sign());
    ComplexMatrix rho = u * family.initial().matrix() * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix::assume_valid(std::move(rho));
}

ComplexMatrix d_rho_d_phi(const ProbeFamily &family, double phi) {
    const DensityMatrix rho = encode(family, phi);
    const ComplexMatrix c = commutator(family.generator(), rho.matrix());
    return cplx{0.0, static_cast<double>(family.sign())} * c;
}

ComplexMatrix dephase_in_product_basis(const ComplexMatrix &rho,
                                       const std::vector<ComplexMatrix> &local_bases) {
    const ComplexMatrix product = tensor(local_bases);
    if (product.dim() != rho.dim()) {
        throw Error(ErrorKind::DimMismatch, "local bases do not match the state");
    }
    // in the product basis the map keeps only the diagonal
    ComplexMatrix in_basis = product.adjoint() * rho * product;
    ComplexMatrix diag(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        diag(i, i) = in_basis(i, i);
    }
    return product * diag * product.adjoint();
}

} // namespace qmetro
