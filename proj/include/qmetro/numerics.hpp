#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qmetro/complex_matrix.hpp"

namespace qmetro {

/// Eigenvalues ascending; eigenvectors are the matching columns of a unitary.
/// Inside a degenerate cluster the choice of eigenvectors is arbitrary.
struct HermitianEigensystem {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    /// V·f(Λ)·V†
    [[nodiscard]] ComplexMatrix apply(const std::function<cplx(double)> &f) const;
    [[nodiscard]] ComplexMatrix reconstruct() const;
};

/// ‖A − A†‖_F / max(‖A‖_F, 1)
double hermiticity_defect(const ComplexMatrix &a);
bool is_hermitian(const ComplexMatrix &a, double rel_tol);

/// Throws NotHermitian / NoConvergence.
HermitianEigensystem hermitian_eig(const ComplexMatrix &a);

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// Reduces onto the subsystems listed in `keep` (any order, output in
/// ascending subsystem order). Throws DimMismatch when dims don't factor `a`.
ComplexMatrix partial_trace(const ComplexMatrix &a, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// exp(sign·i·phi·h), built from the eigendecomposition of h.
ComplexMatrix unitary_from_generator(const ComplexMatrix &h, double phi, int sign);

/// Principal square root of a positive semidefinite matrix. Throws NotPsd.
ComplexMatrix psd_sqrt(const ComplexMatrix &a);

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b);

/// Single-qubit embedding: I ⊗ … ⊗ op(at `qubit`) ⊗ … ⊗ I over n qubits.
ComplexMatrix embed_qubit_operator(const ComplexMatrix &op, std::size_t qubit, std::size_t n);

} // namespace qmetro
