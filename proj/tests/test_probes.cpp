#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "qmetro/error.hpp"
#include "qmetro/numerics.hpp"
#include "qmetro/probes.hpp"
#include "qmetro/random.hpp"
#include "support.hpp"

using namespace qmetro;
using qmetro::testing::diff;
using qmetro::testing::fd_matrix;
using Catch::Approx;

namespace {

ComplexMatrix bell_projector() {
    const double r = std::numbers::sqrt2 / 2;
    const std::vector<cplx> b{r, 0, 0, r};
    return ComplexMatrix::outer(b);
}

} // namespace

TEST_CASE("NGHZ states") {
    const double r = std::numbers::sqrt2 / 2;
    const std::vector<cplx> plus{r, r};
    CHECK(diff(nghz(1).matrix(), ComplexMatrix::outer(plus)) < 1e-15);
    CHECK(diff(nghz(2).matrix(), bell_projector()) < 1e-15);
    CHECK(diff(bell00().matrix(), bell_projector()) < 1e-15);
    CHECK(nghz(3).matrix()(0, 7).real() == Approx(0.5));
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(nghz(n).purity() == Approx(1.0).epsilon(1e-10));
        CHECK(nghz(n).qubit_count() == n);
    }
    CHECK_THROWS_AS(nghz(0), Error);
}

TEST_CASE("Werner states") {
    CHECK(diff(werner({3, 0.0}).matrix(), ComplexMatrix::identity(8) * cplx(0.125)) < 1e-15);
    CHECK(diff(werner({2, 1.0}).matrix(), bell_projector()) < 1e-15);

    const auto ev = hermitian_eig(werner({2, 0.5}).matrix()).eigenvalues;
    CHECK(ev[0] == Approx(0.125));
    CHECK(ev[1] == Approx(0.125));
    CHECK(ev[2] == Approx(0.125));
    CHECK(ev[3] == Approx(0.625));

    CHECK_THROWS_AS(werner({2, 1.5}), Error);
    CHECK_THROWS_AS(werner({2, -0.1}), Error);
}

TEST_CASE("classically correlated states") {
    ClassicalTable t;
    t.parties = 2;
    t.probs = {0.5, 0.0, 0.0, 0.5};
    const std::array<double, 4> d{0.5, 0, 0, 0.5};
    CHECK(diff(classically_correlated(t).matrix(), ComplexMatrix::diagonal(d)) < 1e-15);

    ClassicalTable product;
    product.parties = 2;
    product.probs = {0.3 * 0.8, 0.3 * 0.2, 0.7 * 0.8, 0.7 * 0.2};
    const std::array<double, 2> qa{0.3, 0.7}, qb{0.8, 0.2};
    CHECK(diff(classically_correlated(product).matrix(),
               tensor(ComplexMatrix::diagonal(qa), ComplexMatrix::diagonal(qb))) < 1e-15);

    random::Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const auto table = random::classical_table(2, rng);
        const auto rho = classically_correlated(table).matrix();
        CHECK(diff(dephase_in_product_basis(rho, table.local_bases), rho) < 1e-12);
    }
    // a coherent state is moved by the dephasing map
    const std::vector<ComplexMatrix> comp{ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
    CHECK(diff(dephase_in_product_basis(bell_projector(), comp), bell_projector()) > 0.5);

    ClassicalTable bad = t;
    bad.probs = {0.5, 0.5, 0.5, -0.5};
    CHECK_THROWS_AS(classically_correlated(bad), Error);
    bad.probs = {0.5, 0.6, 0.0, 0.0};
    CHECK_THROWS_AS(classically_correlated(bad), Error);
    bad.probs = {1.0, 0.0};
    CHECK_THROWS_AS(classically_correlated(bad), Error);
    bad = t;
    bad.local_bases = {ComplexMatrix(2, {1, 1, 0, 1}), ComplexMatrix::identity(2)};
    CHECK_THROWS_AS(classically_correlated(bad), Error);
}

TEST_CASE("density matrix validation") {
    CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix(2, {1, 0, 0, 1})), Error);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix(2, {1.5, 0, 0, -0.5})), Error);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix(2, {0.5, 1, 0, 0.5})), Error);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix(3, {1, 0, 0, 0, 0, 0, 0, 0, 0})), Error);
    CHECK_NOTHROW(DensityMatrix::from_matrix(ComplexMatrix(2, {0.5, 0.5, 0.5, 0.5})));
}

TEST_CASE("encoding") {
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto f = phase_family(nghz(n));
        CHECK(encode(f, 0.0).matrix() == f.initial().matrix());
        const double phi = 0.7;
        const cplx expected = std::polar(0.5, -static_cast<double>(n) * phi);
        CHECK(std::abs(encode(f, phi).matrix()(0, (std::size_t{1} << n) - 1) - expected) < 1e-12);
    }

    const auto w = phase_family(werner({3, 0.6}));
    const auto before = hermitian_eig(w.initial().matrix()).eigenvalues;
    for (double phi : {0.3, 1.1, -2.0}) {
        const auto rho = encode(w, phi);
        CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-12);
        const auto after = hermitian_eig(rho.matrix()).eigenvalues;
        for (std::size_t i = 0; i < before.size(); ++i) {
            CHECK(std::abs(after[i] - before[i]) < 1e-10);
        }
        const ProbeFamily back(rho, w.generator(), w.sign());
        CHECK(diff(encode(back, -phi).matrix(), w.initial().matrix()) < 1e-10);
    }
}

TEST_CASE("phase derivative") {
    const auto mixed = phase_family(werner({2, 0.0}));
    CHECK(d_rho_d_phi(mixed, 0.4).max_abs() < 1e-15);

    const double eta = 0.6;
    const auto bell = phase_family(werner({2, eta}));
    const auto d0 = d_rho_d_phi(bell, 0.0);
    CHECK(std::abs(d0(0, 3) - cplx(0, -eta)) < 1e-12);
    CHECK(std::abs(d0(3, 0) - cplx(0, eta)) < 1e-12);

    random::Rng rng(32);
    std::vector<ProbeFamily> families{bell, phase_family(nghz(3), -1), phase_family(werner({3, 0.4})),
                                      phase_family(classically_correlated(random::classical_table(2, rng))),
                                      phase_family(random::density_matrix(4, 2, rng))};
    for (const auto &f : families) {
        for (double phi : {0.0, 0.3, 1.1}) {
            const auto d = d_rho_d_phi(f, phi);
            const auto fd = fd_matrix([&](double x) { return encode(f, x).matrix(); }, phi);
            CHECK(diff(d, fd) <= 1e-6 * d.frobenius_norm());
            CHECK(std::abs(d.trace()) < 1e-10);
            CHECK(diff(d, d.adjoint()) < 1e-10);
        }
    }
}

TEST_CASE("probe family validation") {
    CHECK_THROWS_AS(ProbeFamily(nghz(2), ComplexMatrix(2, {1, 0, 0, 1})), Error);
    CHECK_THROWS_AS(ProbeFamily(nghz(1), ComplexMatrix(2, {0, 1, 0, 0})), Error);
    CHECK_THROWS_AS(ProbeFamily(nghz(1), ComplexMatrix::identity(2), 0), Error);
}
