#pragma once

#include <cstddef>
#include <vector>

#include "qmetro/complex_matrix.hpp"

namespace qmetro {

/// Hermitian, unit-trace, positive semidefinite operator on N qubits.
class DensityMatrix {
  public:
    /// Full validation (Hermitian, trace one, eigenvalues ≥ −1e-10). Throws InvalidState.
    static DensityMatrix from_matrix(ComplexMatrix m);
    /// Skips the eigenvalue check; for matrices that are density operators by construction.
    static DensityMatrix assume_valid(ComplexMatrix m);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return mat_; }
    [[nodiscard]] std::size_t dim() const noexcept { return mat_.dim(); }
    [[nodiscard]] std::size_t qubit_count() const noexcept { return qubits_; }
    [[nodiscard]] double purity() const;

  private:
    DensityMatrix(ComplexMatrix m, std::size_t qubits) : mat_(std::move(m)), qubits_(qubits) {}

    ComplexMatrix mat_;
    std::size_t qubits_ = 0;
};

struct WernerSpec {
    std::size_t n_qubits = 2;
    double eta = 1.0; // signal strength
};

/// Classical distribution over the product of local qubit bases.
struct ClassicalTable {
    std::size_t parties = 2;
    std::vector<double> probs;             // row-major over (a_1, …, a_parties), 2^parties entries
    std::vector<ComplexMatrix> local_bases; // per party, columns are the basis kets; empty ⇒ computational
};

/// The curve φ ↦ e^{sign·iHφ} ρ e^{−sign·iHφ}.
class ProbeFamily {
  public:
    ProbeFamily(DensityMatrix initial, ComplexMatrix generator, int sign = 1);

    [[nodiscard]] const DensityMatrix &initial() const noexcept { return initial_; }
    [[nodiscard]] const ComplexMatrix &generator() const noexcept { return generator_; }
    [[nodiscard]] int sign() const noexcept { return sign_; }
    [[nodiscard]] std::size_t qubit_count() const noexcept { return initial_.qubit_count(); }

  private:
    DensityMatrix initial_;
    ComplexMatrix generator_;
    int sign_;
};

DensityMatrix bell00();
DensityMatrix nghz(std::size_t n);
DensityMatrix werner(const WernerSpec &spec);
DensityMatrix classically_correlated(const ClassicalTable &table);

/// Σ_i |1⟩⟨1| on qubit i, the collective phase generator.
ComplexMatrix phase_generator(std::size_t n);

/// Family with the collective phase generator.
ProbeFamily phase_family(DensityMatrix initial, int sign = 1);

DensityMatrix encode(const ProbeFamily &family, double phi);

/// ∂_φ ρ_φ = sign·i(Hρ_φ − ρ_φH)
ComplexMatrix d_rho_d_phi(const ProbeFamily &family, double phi);

/// Σ_{ab} P_ab ρ P_ab with P_ab projectors onto the product of the table's
/// local bases; equals ρ for classically correlated states.
ComplexMatrix dephase_in_product_basis(const ComplexMatrix &rho,
                                       const std::vector<ComplexMatrix> &local_bases);

} // namespace qmetro
