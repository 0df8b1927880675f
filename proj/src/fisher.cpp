#include "qmetro/fisher.hpp"

#include <algorithm>
#include <cmath>

#include "qmetro/error.hpp"
#include "qmetro/numerics.hpp"
#include "qmetro/tolerances.hpp"

namespace qmetro {

const char *to_string(WitnessVerdict v) noexcept {
    switch (v) {
    case WitnessVerdict::NoGlobalOptimum: return "no-global-optimum";
    case WitnessVerdict::Inconclusive: return "inconclusive";
    case WitnessVerdict::Consistent: return "consistent";
    }
    return "unknown";
}

namespace {

double pair_cutoff(const std::vector<double> &lambda) {
    return tol::support_cutoff * std::max(lambda.back(), 0.0);
}

} // namespace

double qfi(const ProbeFamily &family, double phi) {
    const DensityMatrix rho = encode(family, phi);
    const auto eig = hermitian_eig(rho.matrix());
    const ComplexMatrix &v = eig.eigenvectors;
    const ComplexMatrix h_eig = v.adjoint() * family.generator() * v;
    const auto &lambda = eig.eigenvalues;
    const double cutoff = pair_cutoff(lambda);
    const std::size_t n = lambda.size();
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double s = lambda[i] + lambda[j];
            if (s <= cutoff) {
                continue;
            }
            const double d = lambda[i] - lambda[j];
            f += d * d / s * std::norm(h_eig(i, j));
        }
    }
    return 2.0 * f;
}

SldResult sld(const ProbeFamily &family, double phi) {
    const DensityMatrix rho = encode(family, phi);
    const ComplexMatrix drho = d_rho_d_phi(family, phi);
    const auto eig = hermitian_eig(rho.matrix());
    const ComplexMatrix &v = eig.eigenvectors;
    const ComplexMatrix d_eig = v.adjoint() * drho * v;
    const auto &lambda = eig.eigenvalues;
    const double cutoff = pair_cutoff(lambda);
    const std::size_t n = lambda.size();
    ComplexMatrix l_eig(n);
    SldResult out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double s = lambda[i] + lambda[j];
            if (s <= cutoff) {
                continue;
            }
            l_eig(i, j) = 2.0 * d_eig(i, j) / s;
            ++out.support_dim;
        }
    }
    out.l = v * l_eig * v.adjoint();
    out.l = 0.5 * (out.l + out.l.adjoint());
    out.residual = (drho - 0.5 * anticommutator(rho.matrix(), out.l)).frobenius_norm();
    return out;
}

OutcomeDistribution induced_distribution(const ProbeFamily &family, double phi, const Povm &povm) {
    if (povm.dim() != family.initial().dim()) {
        throw Error(ErrorKind::DimMismatch, "POVM acts on a different dimension");
    }
    const DensityMatrix rho = encode(family, phi);
    const ComplexMatrix drho = d_rho_d_phi(family, phi);
    std::vector<double> p(povm.size());
    std::vector<double> dp(povm.size());
    for (std::size_t k = 0; k < povm.size(); ++k) {
        p[k] = povm.expectation(k, rho.matrix()).real();
        dp[k] = povm.expectation(k, drho).real();
    }
    return OutcomeDistribution::single(std::move(p), std::move(dp));
}

double povm_fisher(const ProbeFamily &family, double phi, const Povm &povm) {
    return classical_fisher(induced_distribution(family, phi, povm));
}

Povm sld_projective_povm(const ProbeFamily &family, double phi) {
    const SldResult s = sld(family, phi);
    return Povm::from_basis(hermitian_eig(s.l).eigenvectors);
}

OptimalityReport optimality_check(const ProbeFamily &family, double phi, const Povm &povm) {
    if (povm.dim() != family.initial().dim()) {
        throw Error(ErrorKind::DimMismatch, "POVM acts on a different dimension");
    }
    const DensityMatrix rho = encode(family, phi);
    const ComplexMatrix rho_half = psd_sqrt(rho.matrix());
    const ComplexMatrix l = sld(family, phi).l;
    const ComplexMatrix l_rho_half = l * rho_half;
    OptimalityReport report;
    report.threshold = tol::optimality_residual * rho_half.frobenius_norm();
    report.optimal = true;
    for (std::size_t x = 0; x < povm.size(); ++x) {
        const ComplexMatrix pi_half = povm.sqrt_element(x);
        const ComplexMatrix a = pi_half * l_rho_half;
        const ComplexMatrix b = pi_half * rho_half;
        const double bb = frobenius_inner(b, b).real();
        const double k = bb > 0.0 ? frobenius_inner(b, a).real() / bb : 0.0;
        const double r = (a - k * b).frobenius_norm();
        report.k.push_back(k);
        report.residuals.push_back(r);
        if (!(r < report.threshold)) {
            report.optimal = false;
        }
    }
    return report;
}

WitnessReport global_optimality_witness(const ProbeFamily &family, double phi) {
    const DensityMatrix rho = encode(family, phi);
    const auto eig = hermitian_eig(rho.matrix());
    const ComplexMatrix u = unitary_from_generator(family.generator(), phi, family.sign());
    const ComplexMatrix l0 = u.adjoint() * sld(family, phi).l * u;
    const ComplexMatrix &h = family.generator();
    const ComplexMatrix c = commutator(l0, h);
    const std::size_t dim = h.dim();

    WitnessReport w;
    w.fisher = qfi(family, phi);
    w.commutator_trace = c.trace();
    w.target_trace = cplx{0.0, w.fisher * static_cast<double>(dim)};
    w.residual = (c - cplx{0.0, w.fisher} * ComplexMatrix::identity(dim)).frobenius_norm();
    w.scale = l0.frobenius_norm() * h.frobenius_norm();
    w.full_rank = eig.eigenvalues.front() > tol::support_cutoff * eig.eigenvalues.back();
    if (!w.full_rank) {
        w.verdict = WitnessVerdict::Inconclusive;
    } else if (w.residual > tol::witness_residual * w.scale) {
        w.verdict = WitnessVerdict::NoGlobalOptimum;
    } else {
        w.verdict = WitnessVerdict::Consistent;
    }
    return w;
}

} // namespace qmetro
