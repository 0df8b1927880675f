#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qmetro/complex_matrix.hpp"
#include "qmetro/distribution.hpp"
#include "qmetro/povm.hpp"
#include "qmetro/probes.hpp"
#include "qmetro/readout.hpp"

namespace qmetro::random {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (Gram–Schmidt on a complex Gaussian matrix).
ComplexMatrix unitary(std::size_t dim, Rng &rng);
/// ρ = GG†/tr(GG†) with G a dim × rank complex Gaussian matrix.
DensityMatrix density_matrix(std::size_t dim, std::size_t rank, Rng &rng);
/// Point on the probability simplex.
std::vector<double> simplex(std::size_t size, Rng &rng);
/// Classical table; parties listed in `computational` keep the computational basis.
ClassicalTable classical_table(std::size_t parties, Rng &rng,
                               const std::vector<std::size_t> &computational = {});
/// Projective measurement in a random basis, or a random `outcomes`-element POVM.
Povm povm(std::size_t dim, std::size_t outcomes, Rng &rng);
LocalBasis local_basis(Rng &rng);
/// Random qubit order and random bases at every history.
AdaptivePolicy adaptive_policy(std::size_t n, Rng &rng);
/// Multi-part distribution p_x(φ) ∝ exp(a_x + b_x sin φ + c_x cos φ) with its exact derivative.
OutcomeDistribution smooth_distribution(const std::vector<std::size_t> &alphabet, double phi,
                                        Rng &rng);

} // namespace qmetro::random
