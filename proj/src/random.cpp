#include "qmetro/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qmetro/numerics.hpp"

namespace qmetro::random {

namespace {

cplx gaussian(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    return {re, n(rng)};
}

void add_policy_steps(AdaptivePolicy &p, const std::string &history,
                      std::vector<std::size_t> remaining, Rng &rng) {
    if (remaining.empty()) {
        return;
    }
    std::uniform_int_distribution<std::size_t> pick(0, remaining.size() - 1);
    const std::size_t k = pick(rng);
    const std::size_t q = remaining[k];
    p.steps[history] = PolicyStep{q, local_basis(rng)};
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
    add_policy_steps(p, history + "0", remaining, rng);
    add_policy_steps(p, history + "1", remaining, rng);
}

} // namespace

ComplexMatrix unitary(std::size_t dim, Rng &rng) {
    ComplexMatrix u(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<cplx> v(dim);
        for (auto &x : v) {
            x = gaussian(rng);
        }
        for (std::size_t k = 0; k < j; ++k) {
            cplx ip = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                ip += std::conj(u(i, k)) * v[i];
            }
            for (std::size_t i = 0; i < dim; ++i) {
                v[i] -= ip * u(i, k);
            }
        }
        double norm = 0.0;
        for (const auto &x : v) {
            norm += std::norm(x);
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < dim; ++i) {
            u(i, j) = v[i] / norm;
        }
    }
    return u;
}

DensityMatrix density_matrix(std::size_t dim, std::size_t rank, Rng &rng) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < std::min(rank, dim); ++j) {
            g(i, j) = gaussian(rng);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho *= cplx(1.0 / rho.trace().real());
    ComplexMatrix sym = rho + rho.adjoint();
    sym *= cplx(0.5);
    return DensityMatrix::from_matrix(std::move(sym));
}

std::vector<double> simplex(std::size_t size, Rng &rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(size);
    for (auto &x : p) {
        x = e(rng);
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

ClassicalTable classical_table(std::size_t parties, Rng &rng,
                               const std::vector<std::size_t> &computational) {
    ClassicalTable t;
    t.parties = parties;
    t.probs = simplex(std::size_t{1} << parties, rng);
    for (std::size_t k = 0; k < parties; ++k) {
        const bool fixed =
            std::find(computational.begin(), computational.end(), k) != computational.end();
        t.local_bases.push_back(fixed ? ComplexMatrix::identity(2) : unitary(2, rng));
    }
    return t;
}

Povm povm(std::size_t dim, std::size_t outcomes, Rng &rng) {
    if (outcomes == dim) {
        return Povm::from_basis(unitary(dim, rng));
    }
    std::vector<ComplexMatrix> raw;
    ComplexMatrix total(dim);
    for (std::size_t k = 0; k < outcomes; ++k) {
        ComplexMatrix g(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                g(i, j) = gaussian(rng);
            }
        }
        raw.push_back(g * g.adjoint());
        total += raw.back();
    }
    const ComplexMatrix s = hermitian_eig(total).apply(
        [](double x) { return cplx(1.0 / std::sqrt(x)); });
    std::vector<ComplexMatrix> elements;
    for (const auto &a : raw) {
        ComplexMatrix e = s * a * s;
        ComplexMatrix sym = e + e.adjoint();
        sym *= cplx(0.5);
        elements.push_back(std::move(sym));
    }
    return Povm::from_elements(std::move(elements));
}

LocalBasis local_basis(Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    LocalBasis b;
    b.theta = std::acos(1.0 - 2.0 * u(rng));
    b.varphi = 2.0 * std::numbers::pi * u(rng);
    return b;
}

AdaptivePolicy adaptive_policy(std::size_t n, Rng &rng) {
    AdaptivePolicy p;
    p.qubits = n;
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    add_policy_steps(p, "", all, rng);
    return p;
}

OutcomeDistribution smooth_distribution(const std::vector<std::size_t> &alphabet, double phi,
                                        Rng &rng) {
    std::size_t size = 1;
    for (auto a : alphabet) {
        size *= a;
    }
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> w(size), dw(size);
    for (std::size_t x = 0; x < size; ++x) {
        const double a = n(rng), b = n(rng), c = n(rng);
        w[x] = std::exp(a + b * std::sin(phi) + c * std::cos(phi));
        dw[x] = w[x] * (b * std::cos(phi) - c * std::sin(phi));
    }
    const double z = std::accumulate(w.begin(), w.end(), 0.0);
    const double dz = std::accumulate(dw.begin(), dw.end(), 0.0);
    std::vector<double> p(size), dp(size);
    for (std::size_t x = 0; x < size; ++x) {
        p[x] = w[x] / z;
        dp[x] = dw[x] / z - w[x] * dz / (z * z);
    }
    return OutcomeDistribution(alphabet, std::move(p), std::move(dp));
}

} // namespace qmetro::random
