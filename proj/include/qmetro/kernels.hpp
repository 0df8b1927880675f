#pragma once

// Data-parallel inner loops. The OpenMP versions in `kernels` are what the
// library calls; `kernels::serial` holds straightforward single-threaded
// reference implementations kept for tests and benchmarks.

#include <array>
#include <cstddef>
#include <vector>

#include "qmetro/complex_matrix.hpp"

namespace qmetro::kernels {

struct JacobiResult {
    std::vector<double> eigenvalues; // unsorted, diagonal order
    ComplexMatrix eigenvectors;      // columns
    int sweeps = 0;
    bool converged = false;
};

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Σ_ab conj(v_a) M[(r,a),(c,b)] v_b : sandwiches one qubit of an n-qubit
/// operator between ⟨v| and |v⟩. `qubit` counts from the most significant bit.
ComplexMatrix contract_qubit(const ComplexMatrix &m, std::size_t qubit,
                             const std::array<cplx, 2> &v);

/// Two-sided Jacobi on a Hermitian matrix using round-robin ordering, so that
/// each step applies n/2 disjoint rotations in parallel.
JacobiResult jacobi_eig(const ComplexMatrix &a, double offdiag_threshold, int max_sweeps);

namespace serial {

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix contract_qubit(const ComplexMatrix &m, std::size_t qubit,
                             const std::array<cplx, 2> &v);
/// Classical cyclic-by-row Jacobi.
JacobiResult jacobi_eig(const ComplexMatrix &a, double offdiag_threshold, int max_sweeps);

} // namespace serial

} // namespace qmetro::kernels
