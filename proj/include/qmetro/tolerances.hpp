#pragma once

#include <cstddef>

// Every numeric threshold used by the library. Relative tolerances are scaled
// by the Frobenius norm (or the largest eigenvalue) of the operand.
namespace qmetro::tol {

// numerics
inline constexpr double hermitian = 1e-10;          // ‖A − A†‖ ≤ hermitian·‖A‖
inline constexpr double jacobi_offdiag = 1e-12;     // off(A) ≤ jacobi_offdiag·‖A‖
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double psd_eigenvalue = -1e-10;    // smallest admissible eigenvalue
inline constexpr double unitary = 1e-10;

// states
inline constexpr double trace_one = 1e-10;
inline constexpr double table_sum = 1e-12;
inline constexpr double basis_orthonormal = 1e-10;

// Fisher information
inline constexpr double support_cutoff = 1e-12;     // λi+λj ≤ cutoff·λmax is dropped
inline constexpr double zero_probability = 1e-14;
inline constexpr double singular_dprob = 1e-7;
inline constexpr double distribution_sum = 1e-10;
inline constexpr double negative_probability = -1e-12;
inline constexpr double optimality_residual = 1e-6; // × ‖ρ^{1/2}‖
inline constexpr double witness_residual = 1e-6;    // × ‖L₀‖‖H‖

// measurements
inline constexpr double povm_completeness = 1e-10;

// harness
inline constexpr std::size_t dense_qubit_budget = 10;
inline constexpr std::size_t optimizer_qubit_budget = 6;
inline constexpr double default_phi = 0.7;

} // namespace qmetro::tol
