#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "qmetro/error.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/harness.hpp"
#include "qmetro/numerics.hpp"
#include "qmetro/random.hpp"
#include "qmetro/readout.hpp"
#include "support.hpp"

using namespace qmetro;
using qmetro::testing::diff;
using qmetro::testing::fd_vector;
using Catch::Approx;

namespace {

ProbeFamily werner_family(std::size_t n, double eta) { return phase_family(werner({n, eta})); }

// Brute-force conditional Fisher information F(target | given) from joint sums.
double brute_conditional(const OutcomeDistribution &d, std::size_t target,
                         const std::vector<std::size_t> &given) {
    std::map<std::vector<std::size_t>, std::pair<double, double>> cond, joint;
    for (std::size_t x = 0; x < d.size(); ++x) {
        const auto label = d.label(x);
        std::vector<std::size_t> key;
        for (auto g : given) {
            key.push_back(label[g]);
        }
        auto &c = cond[key];
        c.first += d.prob()[x];
        c.second += d.dprob()[x];
        key.push_back(label[target]);
        auto &j = joint[key];
        j.first += d.prob()[x];
        j.second += d.dprob()[x];
    }
    double f = 0.0;
    for (const auto &[key, pj] : joint) {
        const std::vector<std::size_t> ckey(key.begin(), key.end() - 1);
        const auto [q, dq] = cond[ckey];
        const double r = pj.first / q;                                 // q(a|b)
        const double dr = pj.second / q - pj.first * dq / (q * q);     // ∂q(a|b)
        f += q * dr * dr / r;
    }
    return f;
}

} // namespace

TEST_CASE("classical Fisher information") {
    const auto flat = OutcomeDistribution::single({0.3, 0.7}, {0.0, 0.0});
    CHECK(classical_fisher(flat) == 0.0);

    const double phi = 0.7;
    const double c = std::cos(2 * phi), s = std::sin(2 * phi);
    const auto interferometer = OutcomeDistribution::single({(1 + c) / 2, (1 - c) / 2}, {-s, s});
    CHECK(classical_fisher(interferometer) == Approx(4.0).epsilon(1e-12));

    const auto singular = OutcomeDistribution::single({1.0, 0.0}, {-1e-3, 1e-3});
    CHECK_THROWS_AS(classical_fisher(singular), Error);
    const auto tiny = OutcomeDistribution::single({1.0, 0.0}, {-1e-9, 1e-9});
    CHECK(classical_fisher(tiny) < 1e-17);
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(OutcomeDistribution::single({0.5, 0.6}, {0, 0}), Error);
    CHECK_THROWS_AS(OutcomeDistribution::single({0.5, 0.5}, {0.1, 0}), Error);
    CHECK_THROWS_AS(OutcomeDistribution::single({1.1, -0.1}, {0, 0}), Error);
    CHECK_THROWS_AS(OutcomeDistribution({2, 2}, {0.5, 0.5}, {0, 0}), Error);
}

TEST_CASE("chain rule against brute-force sums") {
    random::Rng rng(41);
    // product distribution with a φ-independent second part
    const std::vector<double> pa{0.2, 0.8}, da{0.3, -0.3}, pb{0.6, 0.4};
    std::vector<double> p, dp;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            p.push_back(pa[a] * pb[b]);
            dp.push_back(da[a] * pb[b]);
        }
    }
    const OutcomeDistribution product({2, 2}, p, dp);
    const auto terms = chain_decompose(product, {0, 1});
    REQUIRE(terms.size() == 2);
    CHECK(terms[0].first == "F(X2)");
    CHECK(terms[1].first == "F(X1|X2)");
    CHECK(std::abs(terms[0].second) < 1e-15);
    CHECK(terms[1].second == Approx(0.09 / 0.2 + 0.09 / 0.8));

    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random::smooth_distribution({3, 2}, 0.4, rng);
        const auto t = chain_decompose(d, {0, 1});
        CHECK(t[0].second + t[1].second == Approx(classical_fisher(d)).epsilon(1e-9));
        CHECK(t[0].second == Approx(brute_conditional(d, 1, {})).epsilon(1e-9));
        CHECK(t[1].second == Approx(brute_conditional(d, 0, {1})).epsilon(1e-9));
    }
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = random::smooth_distribution({2, 3, 4}, -1.2, rng);
        const auto t = chain_decompose(d, {0, 1, 2});
        CHECK(t[0].first == "F(X3)");
        CHECK(t[1].first == "F(X2|X3)");
        CHECK(t[2].first == "F(X1|X2X3)");
        CHECK(t[0].second == Approx(brute_conditional(d, 2, {})).epsilon(1e-9));
        CHECK(t[1].second == Approx(brute_conditional(d, 1, {2})).epsilon(1e-9));
        CHECK(t[2].second == Approx(brute_conditional(d, 0, {1, 2})).epsilon(1e-9));
        CHECK(t[0].second + t[1].second + t[2].second == Approx(classical_fisher(d)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(chain_decompose(OutcomeDistribution::single({1.0}, {0.0}), {0}), Error);
    CHECK_THROWS_AS(chain_decompose(product, {0, 0}), Error);
}

TEST_CASE("quantum Fisher information closed forms") {
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(qfi(phase_family(nghz(n)), 0.7) == Approx(static_cast<double>(n * n)).epsilon(1e-12));
    }
    for (double eta : {0.0, 0.3, 0.5, 1.0}) {
        CHECK(qfi(werner_family(2, eta), 0.7) == Approx(8 * eta * eta / (1 + eta)).margin(1e-12));
        CHECK(qfi(werner_family(4, eta), 0.7) == Approx(f_co_wn(4, eta)).margin(1e-12));
    }
}

TEST_CASE("pure-state QFI is four times the generator variance") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto f = phase_family(nghz(n));
        const auto rho = encode(f, 0.7).matrix();
        const auto h = f.generator();
        const double mean = (rho * h).trace().real();
        const double second = (rho * h * h).trace().real();
        CHECK(qfi(f, 0.7) == Approx(4 * (second - mean * mean)).epsilon(1e-10));
    }
}

TEST_CASE("QFI does not depend on phase or sign") {
    random::Rng rng(42);
    const std::vector<ProbeFamily> families{werner_family(2, 0.5), werner_family(3, 0.8),
                                            phase_family(nghz(4)),
                                            phase_family(random::density_matrix(8, 3, rng))};
    for (const auto &f : families) {
        const double ref = qfi(f, 0.0);
        for (double phi : {0.3, 0.7, 1.4}) {
            CHECK(std::abs(qfi(f, phi) - ref) < 1e-9);
        }
        const ProbeFamily flipped(f.initial(), f.generator(), -f.sign());
        CHECK(std::abs(qfi(flipped, 0.7) - ref) < 1e-9);
    }
}

TEST_CASE("symmetric logarithmic derivative") {
    const auto mixed = werner_family(2, 0.0);
    CHECK(sld(mixed, 0.7).l.max_abs() < 1e-12);

    const auto w = werner_family(2, 0.5);
    CHECK(sld(w, 0.7).residual < 1e-8);

    random::Rng rng(43);
    const std::vector<ProbeFamily> families{w, werner_family(3, 0.9), phase_family(nghz(3)),
                                            phase_family(random::density_matrix(4, 4, rng)),
                                            phase_family(random::density_matrix(8, 2, rng))};
    for (const auto &f : families) {
        const auto s = sld(f, 1.1);
        const auto rho = encode(f, 1.1).matrix();
        CHECK((rho * s.l * s.l).trace().real() == Approx(qfi(f, 1.1)).epsilon(1e-8));
        CHECK(s.residual < 1e-8);
        CHECK(diff(s.l, s.l.adjoint()) < 1e-10);
    }
}

TEST_CASE("POVM Fisher information") {
    const auto w = werner_family(2, 0.5);
    CHECK(povm_fisher(w, 0.7, Povm::trivial(4)) == 0.0);
    CHECK(povm_fisher(w, 0.7, sld_projective_povm(w, 0.7)) == Approx(qfi(w, 0.7)).epsilon(1e-8));
    CHECK(std::abs(povm_fisher(phase_family(nghz(3)), 0.7, Povm::computational_basis(3))) < 1e-12);
    CHECK_THROWS_AS(povm_fisher(w, 0.7, Povm::trivial(2)), Error);

    const auto d = induced_distribution(w, 0.7, sld_projective_povm(w, 0.7));
    const auto fd = fd_vector(
        [&](double x) { return induced_distribution(w, x, sld_projective_povm(w, 0.7)).prob(); }, 0.7);
    for (std::size_t k = 0; k < fd.size(); ++k) {
        CHECK(std::abs(d.dprob()[k] - fd[k]) < 1e-8);
    }

    random::Rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        const double eta = 0.1 * (1 + trial % 9);
        const auto f = werner_family(2, eta);
        const auto povm = random::povm(4, trial % 2 == 0 ? 4 : 6, rng);
        CHECK(povm_fisher(f, 0.7, povm) <= qfi(f, 0.7) + 1e-8);
    }
}

TEST_CASE("optimality condition") {
    const auto w = werner_family(2, 0.5);
    const auto sld_report = optimality_check(w, 0.7, sld_projective_povm(w, 0.7));
    CHECK(sld_report.optimal);
    for (double r : sld_report.residuals) {
        CHECK(r >= 0.0);
    }
    CHECK_FALSE(optimality_check(w, 0.7, Povm::trivial(4)).optimal);

    const auto comp = optimality_check(w, 0.7, Povm::computational_basis(2));
    CHECK_FALSE(comp.optimal);
    CHECK(povm_fisher(w, 0.7, Povm::computational_basis(2)) < qfi(w, 0.7));
}

TEST_CASE("global optimality witness") {
    for (double eta : {0.2, 0.5, 0.8}) {
        const auto r = global_optimality_witness(werner_family(2, eta), 0.7);
        CHECK(std::abs(r.commutator_trace) < 1e-8 * r.scale);
        CHECK(r.full_rank);
        CHECK(r.residual >= r.fisher * 2.0 - 1e-9); // ≥ F·√dim
        CHECK(r.verdict == WitnessVerdict::NoGlobalOptimum);
        CHECK(std::abs(r.target_trace - cplx(0, 4 * r.fisher)) < 1e-12);
    }
    const auto pure = global_optimality_witness(werner_family(2, 1.0), 0.7);
    CHECK_FALSE(pure.full_rank);
    CHECK(pure.verdict == WitnessVerdict::Inconclusive);
}
