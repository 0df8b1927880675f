#include <array>
#include <random>

#include "qmetro/kernels.hpp"
#include "qmetro/numerics.hpp"
#include "support.hpp"

using namespace qmetro;
using qmetro::testing::diff;
using qmetro::testing::random_hermitian;

TEST_CASE("parallel matmul and kron agree with serial") {
    std::mt19937_64 rng(21);
    for (std::size_t dim : {1u, 3u, 16u, 70u, 128u}) {
        const auto a = random_hermitian(dim, rng);
        const auto b = random_hermitian(dim, rng);
        CHECK(diff(kernels::matmul(a, b), kernels::serial::matmul(a, b)) < 1e-10 * dim);
    }
    const auto a = random_hermitian(8, rng);
    const auto b = random_hermitian(16, rng);
    CHECK(kernels::kron(a, b) == kernels::serial::kron(a, b));
}

TEST_CASE("qubit contraction agrees with serial and with an explicit sandwich") {
    std::mt19937_64 rng(22);
    const std::array<cplx, 2> v{cplx(0.6, 0.0), cplx(0.0, 0.8)};
    for (std::size_t n = 1; n <= 7; ++n) {
        const auto m = random_hermitian(std::size_t{1} << n, rng);
        for (std::size_t q = 0; q < n; ++q) {
            const auto par = kernels::contract_qubit(m, q, v);
            CHECK(diff(par, kernels::serial::contract_qubit(m, q, v)) < 1e-12);
            if (n == 2) {
                // ⟨v| on one factor of a product operator
                const ComplexMatrix pv = ComplexMatrix::outer(v);
                const ComplexMatrix a(2, {1, cplx(0, 1), cplx(0, -1), 2});
                const ComplexMatrix b(2, {3, 1, 1, -1});
                const ComplexMatrix ab = tensor(a, b);
                const ComplexMatrix keep = q == 0 ? b : a;
                const cplx weight = ((q == 0 ? a : b) * pv).trace();
                CHECK(diff(kernels::contract_qubit(ab, q, v), keep * weight) < 1e-12);
            }
        }
    }
}

TEST_CASE("parallel and serial Jacobi give the same spectrum") {
    std::mt19937_64 rng(23);
    for (std::size_t dim : {2u, 7u, 32u, 65u}) {
        const auto a = random_hermitian(dim, rng);
        auto p = kernels::jacobi_eig(a, 1e-12, 100);
        auto s = kernels::serial::jacobi_eig(a, 1e-12, 100);
        REQUIRE(p.converged);
        REQUIRE(s.converged);
        std::sort(p.eigenvalues.begin(), p.eigenvalues.end());
        std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(std::abs(p.eigenvalues[i] - s.eigenvalues[i]) < 1e-10 * a.frobenius_norm());
        }
    }
}

TEST_CASE("Jacobi reports non-convergence under a tiny sweep cap") {
    std::mt19937_64 rng(24);
    const auto a = random_hermitian(40, rng);
    CHECK_FALSE(kernels::jacobi_eig(a, 1e-12, 1).converged);
}
