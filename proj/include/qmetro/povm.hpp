#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "qmetro/complex_matrix.hpp"

namespace qmetro {

/// Finite POVM. Elements are stored either densely or, for rank-one elements
/// |v⟩⟨v|, as the (possibly subnormalised) ket v, which keeps 2^N-outcome
/// measurements on N qubits at O(4^N) memory.
class Povm {
  public:
    using Ket = std::vector<cplx>;
    using Element = std::variant<ComplexMatrix, Ket>;

    /// Dense elements; checks each is PSD and that they sum to identity.
    static Povm from_elements(std::vector<ComplexMatrix> elements);
    /// Rank-one elements |v_k⟩⟨v_k|; checks Σ|v_k⟩⟨v_k| = I.
    static Povm from_kets(std::vector<Ket> kets);
    /// Projective measurement onto the columns of a unitary.
    static Povm from_basis(const ComplexMatrix &unitary);
    static Povm computational_basis(std::size_t qubits);
    static Povm trivial(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
    [[nodiscard]] const Element &raw(std::size_t k) const { return elements_[k]; }

    [[nodiscard]] ComplexMatrix element(std::size_t k) const;
    [[nodiscard]] ComplexMatrix sqrt_element(std::size_t k) const;
    /// tr(Π_k A) for Hermitian or general A.
    [[nodiscard]] cplx expectation(std::size_t k, const ComplexMatrix &a) const;

  private:
    Povm(std::size_t dim, std::vector<Element> elements)
        : dim_(dim), elements_(std::move(elements)) {}

    std::size_t dim_ = 0;
    std::vector<Element> elements_;
};

} // namespace qmetro
