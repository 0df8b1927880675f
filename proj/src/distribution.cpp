#include "qmetro/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qmetro/error.hpp"
#include "qmetro/tolerances.hpp"

namespace qmetro {

OutcomeDistribution::OutcomeDistribution(std::vector<std::size_t> alphabet_sizes,
                                         std::vector<double> prob, std::vector<double> dprob)
    : alphabet_(std::move(alphabet_sizes)), prob_(std::move(prob)), dprob_(std::move(dprob)) {
    if (alphabet_.empty()) {
        throw Error(ErrorKind::DimMismatch, "distribution needs at least one part");
    }
    std::size_t total = 1;
    for (std::size_t a : alphabet_) {
        if (a == 0) {
            throw Error(ErrorKind::DimMismatch, "empty alphabet");
        }
        total *= a;
    }
    if (prob_.size() != total || dprob_.size() != total) {
        throw Error(ErrorKind::DimMismatch, "distribution size does not match its alphabets");
    }
    double sp = 0.0;
    double sd = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
        if (!std::isfinite(prob_[k]) || !std::isfinite(dprob_[k])) {
            throw Error(ErrorKind::InvalidState, "non-finite probability");
        }
        if (prob_[k] < tol::negative_probability) {
            throw Error(ErrorKind::InvalidState, "negative probability");
        }
        sp += prob_[k];
        sd += dprob_[k];
    }
    if (std::abs(sp - 1.0) > tol::distribution_sum) {
        throw Error(ErrorKind::InvalidState, "probabilities sum to " + std::to_string(sp));
    }
    if (std::abs(sd) > tol::distribution_sum) {
        throw Error(ErrorKind::InvalidState, "derivatives sum to " + std::to_string(sd));
    }
}

OutcomeDistribution OutcomeDistribution::single(std::vector<double> prob,
                                                std::vector<double> dprob) {
    const std::size_t n = prob.size();
    return OutcomeDistribution({n}, std::move(prob), std::move(dprob));
}

std::vector<std::size_t> OutcomeDistribution::label(std::size_t flat) const {
    std::vector<std::size_t> out(alphabet_.size());
    for (std::size_t k = alphabet_.size(); k-- > 0;) {
        out[k] = flat % alphabet_[k];
        flat /= alphabet_[k];
    }
    return out;
}

std::size_t OutcomeDistribution::flat_index(const std::vector<std::size_t> &label) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < alphabet_.size(); ++k) {
        idx = idx * alphabet_[k] + label[k];
    }
    return idx;
}

OutcomeDistribution OutcomeDistribution::marginal(const std::vector<std::size_t> &keep) const {
    std::vector<std::size_t> sizes;
    for (std::size_t k : keep) {
        if (k >= parts()) {
            throw Error(ErrorKind::DimMismatch, "marginal part out of range");
        }
        sizes.push_back(alphabet_[k]);
    }
    const std::size_t total =
        std::accumulate(sizes.begin(), sizes.end(), std::size_t{1}, std::multiplies<>{});
    std::vector<double> p(total, 0.0);
    std::vector<double> dp(total, 0.0);
    for (std::size_t flat = 0; flat < prob_.size(); ++flat) {
        const auto full = label(flat);
        std::size_t idx = 0;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            idx = idx * sizes[j] + full[keep[j]];
        }
        p[idx] += prob_[flat];
        dp[idx] += dprob_[flat];
    }
    return OutcomeDistribution(std::move(sizes), std::move(p), std::move(dp));
}

double classical_fisher(const OutcomeDistribution &d) {
    double f = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double p = d.prob()[k];
        const double dp = d.dprob()[k];
        if (p <= tol::zero_probability) {
            if (std::abs(dp) > tol::singular_dprob) {
                throw Error(ErrorKind::SingularFisher,
                            "outcome with vanishing probability has derivative " +
                                std::to_string(dp));
            }
            continue;
        }
        f += dp * dp / p;
    }
    return f;
}

namespace {

std::string part_name(std::size_t part) { return "X" + std::to_string(part + 1); }

// F(target | conditioning) = Σ_c p(c) Σ_x q(x|c) (∂ ln q(x|c))²
double conditional_fisher(const OutcomeDistribution &d, std::size_t target,
                          const std::vector<std::size_t> &conditioning) {
    std::vector<std::size_t> joint_parts = conditioning;
    joint_parts.push_back(target);
    const OutcomeDistribution joint = d.marginal(joint_parts);
    if (conditioning.empty()) {
        return classical_fisher(joint);
    }
    const OutcomeDistribution cond = d.marginal(conditioning);
    const std::size_t nx = d.alphabet_sizes()[target];
    double total = 0.0;
    for (std::size_t c = 0; c < cond.size(); ++c) {
        const double pc = cond.prob()[c];
        const double dpc = cond.dprob()[c];
        if (pc <= tol::zero_probability) {
            continue;
        }
        double fc = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            const double pj = joint.prob()[c * nx + x];
            const double dpj = joint.dprob()[c * nx + x];
            const double q = pj / pc;
            const double dq = (dpj * pc - pj * dpc) / (pc * pc);
            if (q <= tol::zero_probability) {
                if (std::abs(dq) > tol::singular_dprob) {
                    throw Error(ErrorKind::SingularFisher, "conditional outcome is singular");
                }
                continue;
            }
            fc += dq * dq / q;
        }
        total += pc * fc;
    }
    return total;
}

} // namespace

std::vector<std::pair<std::string, double>>
chain_decompose(const OutcomeDistribution &d, const std::vector<std::size_t> &order) {
    const std::size_t n = d.parts();
    if (n < 2) {
        throw Error(ErrorKind::DimMismatch, "chain decomposition needs at least two parts");
    }
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted.size() != n || sorted[k] != k) {
            throw Error(ErrorKind::DimMismatch, "order is not a permutation of the parts");
        }
    }
    std::vector<std::pair<std::string, double>> out;
    std::vector<std::size_t> conditioning;
    for (std::size_t k = n; k-- > 0;) {
        const std::size_t target = order[k];
        std::string name = "F(" + part_name(target);
        if (!conditioning.empty()) {
            name += "|";
            for (auto it = conditioning.rbegin(); it != conditioning.rend(); ++it) {
                name += part_name(*it);
            }
        }
        name += ")";
        out.emplace_back(std::move(name), conditional_fisher(d, target, conditioning));
        conditioning.push_back(target);
    }
    return out;
}

} // namespace qmetro
