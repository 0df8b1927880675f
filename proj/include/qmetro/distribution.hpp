#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qmetro {

/// Joint outcome probabilities p_φ(x_1,…,x_k) and their φ-derivatives over a
/// finite product alphabet. Entries are row-major in the label tuple.
class OutcomeDistribution {
  public:
    /// Validates shape and the probability/derivative sum rules.
    OutcomeDistribution(std::vector<std::size_t> alphabet_sizes, std::vector<double> prob,
                        std::vector<double> dprob);

    /// One-part distribution.
    static OutcomeDistribution single(std::vector<double> prob, std::vector<double> dprob);

    [[nodiscard]] std::size_t parts() const noexcept { return alphabet_.size(); }
    [[nodiscard]] const std::vector<std::size_t> &alphabet_sizes() const noexcept {
        return alphabet_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return prob_.size(); }
    [[nodiscard]] const std::vector<double> &prob() const noexcept { return prob_; }
    [[nodiscard]] const std::vector<double> &dprob() const noexcept { return dprob_; }

    [[nodiscard]] std::vector<std::size_t> label(std::size_t flat) const;
    [[nodiscard]] std::size_t flat_index(const std::vector<std::size_t> &label) const;

    /// Marginal over the listed parts, keeping their order.
    [[nodiscard]] OutcomeDistribution marginal(const std::vector<std::size_t> &keep) const;

  private:
    std::vector<std::size_t> alphabet_;
    std::vector<double> prob_;
    std::vector<double> dprob_;
};

/// Σ_x (∂p_x)²/p_x. Outcomes with p ≤ 1e-14 are skipped unless their
/// derivative exceeds 1e-7, which raises SingularFisher.
double classical_fisher(const OutcomeDistribution &d);

/// Chain terms for the ordering Y_k = part order[k−1]: F(Y_N), F(Y_{N−1}|Y_N),
/// …, F(Y_1|Y_2…Y_N). Labels name parts by index, X1 being part 0. Each term
/// is computed from the conditional distributions directly.
std::vector<std::pair<std::string, double>>
chain_decompose(const OutcomeDistribution &d, const std::vector<std::size_t> &order);

} // namespace qmetro
