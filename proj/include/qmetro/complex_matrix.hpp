#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qmetro {

using cplx = std::complex<double>;

/// Dense square complex matrix stored row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::span<const cplx> values);
    /// |v⟩⟨v|
    static ComplexMatrix outer(std::span<const cplx> ket);
    /// |u⟩⟨v|
    static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    cplx &operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
    const cplx &operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }

    [[nodiscard]] std::span<cplx> data() noexcept { return data_; }
    [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] cplx trace() const noexcept;
    [[nodiscard]] double frobenius_norm() const noexcept;
    [[nodiscard]] double max_abs() const noexcept;
    [[nodiscard]] bool all_finite() const noexcept;
    [[nodiscard]] std::vector<cplx> column(std::size_t col) const;

    ComplexMatrix &operator+=(const ComplexMatrix &rhs);
    ComplexMatrix &operator-=(const ComplexMatrix &rhs);
    ComplexMatrix &operator*=(cplx scale) noexcept;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(ComplexMatrix lhs, cplx scale);
ComplexMatrix operator*(cplx scale, ComplexMatrix rhs);
/// Matrix product, dispatched to the OpenMP kernel.
ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs);

/// Frobenius inner product tr(A†B).
cplx frobenius_inner(const ComplexMatrix &a, const ComplexMatrix &b);

} // namespace qmetro
