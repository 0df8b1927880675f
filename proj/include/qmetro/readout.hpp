#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmetro/complex_matrix.hpp"
#include "qmetro/distribution.hpp"
#include "qmetro/povm.hpp"
#include "qmetro/probes.hpp"

namespace qmetro {

// ---------------------------------------------------------------------------
// Single-shot POVM measurement

struct MeasureResult {
    OutcomeDistribution distribution;
    /// Lüders post-measurement states √Π ρ √Π / p; empty for p ≤ 1e-14 or
    /// when post-states were not requested.
    std::vector<std::optional<DensityMatrix>> post_states;
};

MeasureResult measure(const DensityMatrix &rho, const ComplexMatrix &drho, const Povm &povm,
                      bool with_post_states = true);

// ---------------------------------------------------------------------------
// Coherent readout

/// CNOT from qubit 0 onto each of qubits 1..n−1.
ComplexMatrix cnot_cascade(std::size_t n);

/// V†(P_m ⊗ |r⟩⟨r|)V for the CNOT cascade V, first-qubit projectors P_m onto
/// the equatorial basis at `azimuth` (0 gives |±⟩) and all strings r of the
/// remaining qubits.
Povm coherent_nghz_readout(std::size_t n, double azimuth = 0.0);

// ---------------------------------------------------------------------------
// Adaptive readout

/// Bloch angles of the outcome-0 ket m₀|0⟩ + m₁|1⟩, m₀ = cos(θ/2), m₁ = e^{iϕ}sin(θ/2).
struct LocalBasis {
    double theta = std::numbers::pi / 2;
    double varphi = 0.0;

    /// outcome 0 → |m⟩, outcome 1 → |m⊥⟩
    [[nodiscard]] std::array<cplx, 2> ket(int outcome) const;
    static LocalBasis plus_minus() { return {}; }
    static LocalBasis from_ket(const std::array<cplx, 2> &v);

    friend bool operator==(const LocalBasis &, const LocalBasis &) = default;
};

struct PolicyStep {
    std::size_t qubit = 0;
    LocalBasis basis;

    friend bool operator==(const PolicyStep &, const PolicyStep &) = default;
};

enum class Correction {
    None,
    ParityZ, // σ_z on the last qubit when an odd number of outcome-1 results preceded it
};

/// Decision tree keyed by outcome history ("" for the first measurement, then
/// strings over {'0','1'}). Every reachable prefix of length < qubits needs a step.
struct AdaptivePolicy {
    std::size_t qubits = 0;
    std::map<std::string, PolicyStep> steps;
    Correction correction = Correction::None;

    /// Throws IncompletePolicy when a reachable history lacks a step or a
    /// qubit would be measured twice.
    void validate() const;

    friend bool operator==(const AdaptivePolicy &, const AdaptivePolicy &) = default;
};

struct Branch {
    std::string history;
    double prob = 0.0;  // joint probability of the history
    double dprob = 0.0;
    std::optional<DensityMatrix> post_state; // unmeasured qubits, ascending index order
};

/// All 2^N outcome sequences with exact derivatives; part k of the result is
/// the k-th measurement in time order.
OutcomeDistribution run_adaptive(const ProbeFamily &family, double phi,
                                 const AdaptivePolicy &policy);

/// Branches after `depth` measurements.
std::vector<Branch> enumerate_branches(const ProbeFamily &family, double phi,
                                       const AdaptivePolicy &policy, std::size_t depth);

/// ± on qubits 0..n−2 in order, parity σ_z correction, and the last qubit in
/// the equatorial basis at azimuth sign·n·phi + π/2, which is optimal for the
/// corrected last-qubit state at `phi`.
AdaptivePolicy paper_policy(std::size_t n, double phi, int sign = 1);

struct OptimizerConfig {
    std::size_t grid_theta = 12;
    std::size_t grid_varphi = 12;
    std::size_t max_iterations = 200;
    double initial_step = 0.25;
    double min_step = 1e-4;
    std::size_t max_evaluations = 5'000'000;
    std::uint64_t seed = 0; // nonzero rotates the azimuth grid by a seeded offset
};

struct AdaptiveOptimum {
    AdaptivePolicy policy;
    double fisher = 0.0;
    std::size_t evaluations = 0;
    bool budget_exceeded = false;
};

/// Searches measurement bases for the fixed order 0..N−1: grid then coordinate
/// descent over every non-final node; the final measurement on each branch is
/// set to the SLD eigenbasis of that branch's one-qubit conditional state.
AdaptiveOptimum optimize_adaptive(const ProbeFamily &family, double phi,
                                  const OptimizerConfig &config = {});

} // namespace qmetro
