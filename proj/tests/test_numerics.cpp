#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "qmetro/error.hpp"
#include "qmetro/numerics.hpp"
#include "qmetro/probes.hpp"
#include "support.hpp"

using namespace qmetro;
using qmetro::testing::diff;
using qmetro::testing::random_hermitian;
using Catch::Approx;

namespace {

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0, 1, 1, 0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1, 0, 0, -1}); }

ComplexMatrix proj(std::size_t dim, std::size_t k) {
    ComplexMatrix m(dim);
    m(k, k) = 1.0;
    return m;
}

} // namespace

TEST_CASE("complex matrix rejects bad input") {
    CHECK_THROWS_AS(ComplexMatrix(2, {1, 2, 3}), Error);
    CHECK_THROWS_AS(ComplexMatrix(2, {1, 0, 0, std::nan("")}), Error);
    CHECK_THROWS_AS(ComplexMatrix(2) * ComplexMatrix(3), Error);
}

TEST_CASE("eigensystem of Pauli matrices") {
    const auto z = hermitian_eig(pauli_z());
    CHECK(z.eigenvalues[0] == Approx(-1.0));
    CHECK(z.eigenvalues[1] == Approx(1.0));

    const auto x = hermitian_eig(pauli_x());
    CHECK(x.eigenvalues[0] == Approx(-1.0));
    CHECK(x.eigenvalues[1] == Approx(1.0));
    // (|0⟩ − |1⟩)/√2 up to phase
    const auto v = x.eigenvectors.column(0);
    CHECK(std::abs(v[0] + v[1]) < 1e-12);
    CHECK(std::abs(v[0]) == Approx(std::numbers::sqrt2 / 2));
}

TEST_CASE("random Hermitian eigensystems reconstruct") {
    std::mt19937_64 rng(11);
    for (std::size_t dim : {1u, 2u, 5u, 16u, 33u, 64u, 100u}) {
        const ComplexMatrix a = random_hermitian(dim, rng);
        const auto es = hermitian_eig(a);
        CHECK(diff(es.reconstruct(), a) <= 1e-10 * a.frobenius_norm());
        CHECK(diff(es.eigenvectors.adjoint() * es.eigenvectors, ComplexMatrix::identity(dim)) < 1e-10);
        double sum = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            sum += es.eigenvalues[i];
            if (i > 0) {
                CHECK(es.eigenvalues[i - 1] <= es.eigenvalues[i]);
            }
        }
        CHECK(std::abs(sum - a.trace().real()) < 1e-10 * std::max(1.0, a.frobenius_norm()));
    }
}

TEST_CASE("degenerate spectra") {
    const auto es = hermitian_eig(ComplexMatrix::identity(8) * cplx(3.0));
    for (double l : es.eigenvalues) {
        CHECK(l == Approx(3.0));
    }
    const auto w = hermitian_eig(werner({3, 0.4}).matrix());
    CHECK(w.eigenvalues[0] == Approx(0.6 / 8));
    CHECK(w.eigenvalues[7] == Approx(0.4 + 0.6 / 8));
}

TEST_CASE("non-Hermitian input is rejected") {
    CHECK_THROWS_MATCHES(hermitian_eig(ComplexMatrix(2, {0, 1, 0, 0})), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error &e) { return e.kind() == ErrorKind::NotHermitian; }));
}

TEST_CASE("tensor products") {
    CHECK(tensor(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
    CHECK(tensor(proj(2, 0), proj(2, 1)) == proj(4, 1));

    std::mt19937_64 rng(3);
    const auto a = random_hermitian(2, rng), b = random_hermitian(2, rng);
    const auto c = random_hermitian(2, rng), d = random_hermitian(2, rng);
    CHECK(diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-12);
    CHECK(diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-12);
}

TEST_CASE("tensor is exactly associative on integer entries") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(-9, 9);
    const auto integer_matrix = [&](std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                const double re = pick(rng);
                m(i, j) = cplx(re, pick(rng));
            }
        }
        return m;
    };
    const auto a = integer_matrix(2), b = integer_matrix(3), c = integer_matrix(2);
    CHECK(tensor(tensor(a, b), c) == tensor(a, tensor(b, c)));
    const std::array<ComplexMatrix, 3> list{a, b, c};
    CHECK(tensor(list) == tensor(a, tensor(b, c)));
}

TEST_CASE("partial trace") {
    const std::array<std::size_t, 2> dims{2, 2};
    const std::array<std::size_t, 1> first{0}, second{1};
    const ComplexMatrix half = ComplexMatrix::identity(2) * cplx(0.5);
    CHECK(diff(partial_trace(bell00().matrix(), dims, first), half) < 1e-12);
    CHECK(diff(partial_trace(bell00().matrix(), dims, second), half) < 1e-12);

    std::mt19937_64 rng(4);
    const ComplexMatrix rho = random_hermitian(2, rng);
    ComplexMatrix sigma = ComplexMatrix::identity(2);
    sigma(0, 1) = cplx(0.1, 0.2);
    sigma(1, 0) = cplx(0.1, -0.2);
    sigma *= cplx(0.5);
    CHECK(diff(partial_trace(tensor(rho, sigma), dims, first), rho) < 1e-12);

    for (std::size_t n = 2; n <= 5; ++n) {
        const std::vector<std::size_t> qdims(n, 2);
        for (std::size_t q = 0; q < n; ++q) {
            const std::array<std::size_t, 1> keep{q};
            CHECK(diff(partial_trace(werner({n, 0.7}).matrix(), qdims, keep), half) < 1e-12);
        }
    }

    const std::array<std::size_t, 2> bad{2, 3};
    CHECK_THROWS_AS(partial_trace(bell00().matrix(), bad, first), Error);
}

TEST_CASE("partial trace keeps subsystems in ascending order") {
    const std::array<std::size_t, 3> dims{2, 2, 2};
    const ComplexMatrix a = proj(2, 0), b = proj(2, 1);
    const ComplexMatrix c = ComplexMatrix::identity(2) * cplx(0.5);
    const ComplexMatrix rho = tensor(tensor(a, b), c);
    const std::array<std::size_t, 2> keep{2, 0};
    CHECK(diff(partial_trace(rho, dims, keep), tensor(a, c)) < 1e-12);
}

TEST_CASE("unitary from generator") {
    const double phi = 0.37;
    const ComplexMatrix u = unitary_from_generator(proj(2, 1), phi, 1);
    CHECK(std::abs(u(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(u(1, 1) - std::polar(1.0, phi)) < 1e-12);
    CHECK(std::abs(u(0, 1)) < 1e-12);

    CHECK(unitary_from_generator(pauli_x(), 0.0, 1) == ComplexMatrix::identity(2));
    CHECK_THROWS_AS(unitary_from_generator(pauli_x(), 0.1, 2), Error);

    std::mt19937_64 rng(5);
    const ComplexMatrix h = random_hermitian(8, rng);
    const auto u1 = unitary_from_generator(h, 0.3, -1);
    const auto u2 = unitary_from_generator(h, 1.1, -1);
    CHECK(diff(u1 * u2, unitary_from_generator(h, 1.4, -1)) < 1e-10);
    CHECK(diff(u1 * u1.adjoint(), ComplexMatrix::identity(8)) < 1e-10);

    const ComplexMatrix a = random_hermitian(8, rng);
    const ComplexMatrix conj = u1 * a * u1.adjoint();
    CHECK(std::abs(conj.trace() - a.trace()) < 1e-10);
    const auto before = hermitian_eig(a).eigenvalues;
    const auto after = hermitian_eig(conj).eigenvalues;
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(before[i] - after[i]) < 1e-10);
    }
}

TEST_CASE("PSD square root") {
    CHECK(diff(psd_sqrt(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) < 1e-12);
    const std::array<double, 2> d{4.0, 9.0}, r{2.0, 3.0};
    CHECK(diff(psd_sqrt(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(r)) < 1e-12);

    std::mt19937_64 rng(6);
    const ComplexMatrix b = random_hermitian(6, rng);
    const ComplexMatrix a = b * b;
    const ComplexMatrix s = psd_sqrt(a);
    CHECK(diff(s * s, a) < 1e-9);
    CHECK(hermitian_eig(s).eigenvalues.front() > -1e-10);

    CHECK_THROWS_AS(psd_sqrt(pauli_z()), Error);
}

TEST_CASE("commutators and embeddings") {
    const ComplexMatrix x = pauli_x(), z = pauli_z();
    ComplexMatrix iy(2, {0, 2, -2, 0}); // [Z, X] = 2iY
    CHECK(diff(commutator(z, x), iy) < 1e-12);
    CHECK(diff(anticommutator(z, x), ComplexMatrix(2)) < 1e-12);
    CHECK(embed_qubit_operator(z, 0, 2) == tensor(z, ComplexMatrix::identity(2)));
    CHECK(embed_qubit_operator(z, 2, 3) ==
          tensor(ComplexMatrix::identity(4), z));
}
