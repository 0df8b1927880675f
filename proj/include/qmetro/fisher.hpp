#pragma once

#include <cstddef>
#include <vector>

#include "qmetro/complex_matrix.hpp"
#include "qmetro/distribution.hpp"
#include "qmetro/povm.hpp"
#include "qmetro/probes.hpp"

namespace qmetro {

struct SldResult {
    ComplexMatrix l;
    std::size_t support_dim = 0; // ordered eigenvalue pairs retained
    double residual = 0.0;       // ‖∂ρ − (ρL + Lρ)/2‖_F
};

struct OptimalityReport {
    std::vector<double> residuals;
    std::vector<double> k;
    double threshold = 0.0;
    bool optimal = false;
};

enum class WitnessVerdict { NoGlobalOptimum, Inconclusive, Consistent };

struct WitnessReport {
    cplx commutator_trace;
    cplx target_trace; // i·F·dim
    double residual = 0.0; // ‖[L₀,H] − iF·I‖_F
    double scale = 0.0;    // ‖L₀‖_F‖H‖_F
    double fisher = 0.0;
    bool full_rank = false;
    WitnessVerdict verdict = WitnessVerdict::Inconclusive;
};

const char *to_string(WitnessVerdict v) noexcept;

/// Optimal Fisher information over all POVMs from the spectral form
/// 2 Σ_ij (λi−λj)²/(λi+λj) |⟨ψi|H|ψj⟩|², pairs with λi+λj ≤ 1e-12·λmax dropped.
double qfi(const ProbeFamily &family, double phi);

/// Symmetric logarithmic derivative in ρ_φ's eigenbasis,
/// L_ij = 2(∂ρ)_ij/(λi+λj) on the support.
SldResult sld(const ProbeFamily &family, double phi);

/// Outcome distribution p_x = tr(Π_x ρ_φ) with ∂p_x = tr(Π_x ∂ρ_φ).
OutcomeDistribution induced_distribution(const ProbeFamily &family, double phi, const Povm &povm);

double povm_fisher(const ProbeFamily &family, double phi, const Povm &povm);

/// Rank-one projectors onto the eigenvectors of L_φ.
Povm sld_projective_povm(const ProbeFamily &family, double phi);

/// Checks Π^{1/2} L ρ^{1/2} = k Π^{1/2} ρ^{1/2} element by element with a
/// real least-squares k.
OptimalityReport optimality_check(const ProbeFamily &family, double phi, const Povm &povm);

/// Tests whether [L₀, H] = iF·I can hold, with L₀ = U†L_φU. Its trace always
/// vanishes, so for full-rank states with F > 0 the residual stays ≥ F√dim.
WitnessReport global_optimality_witness(const ProbeFamily &family, double phi);

} // namespace qmetro
