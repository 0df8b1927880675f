#include "qmetro/readout.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>

#include "qmetro/error.hpp"
#include "qmetro/kernels.hpp"
#include "qmetro/numerics.hpp"
#include "qmetro/tolerances.hpp"

namespace qmetro {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0.0) {
        a += two_pi;
    }
    return a >= two_pi ? 0.0 : a;
}

LocalBasis normalized(LocalBasis b) {
    b.theta = std::fmod(b.theta, two_pi);
    if (b.theta < 0.0) {
        b.theta = -b.theta;
        b.varphi += std::numbers::pi;
    }
    if (b.theta > std::numbers::pi) {
        b.theta = two_pi - b.theta;
        b.varphi += std::numbers::pi;
    }
    b.varphi = wrap_angle(b.varphi);
    return b;
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) { return 0.5 * (m + m.adjoint()); }

void apply_sigma_z(ComplexMatrix &m) {
    m(0, 1) = -m(0, 1);
    m(1, 0) = -m(1, 0);
}

std::string history_string(std::size_t value, std::size_t length) {
    std::string h(length, '0');
    for (std::size_t k = 0; k < length; ++k) {
        if ((value >> (length - 1 - k)) & 1U) {
            h[k] = '1';
        }
    }
    return h;
}

struct WalkState {
    ComplexMatrix sigma;  // unnormalised conditional operator
    ComplexMatrix dsigma; // its φ-derivative
    std::vector<std::size_t> remaining;
    std::string history;
    int parity = 0;
};

using LeafVisitor = std::function<void(const WalkState &)>;

void walk(const AdaptivePolicy &policy, const WalkState &state, std::size_t depth,
          const LeafVisitor &visit) {
    if (state.history.size() == depth || state.remaining.empty()) {
        visit(state);
        return;
    }
    const auto it = policy.steps.find(state.history);
    if (it == policy.steps.end()) {
        throw Error(ErrorKind::IncompletePolicy, "no step for history '" + state.history + "'");
    }
    const PolicyStep &step = it->second;
    const auto pos_it = std::find(state.remaining.begin(), state.remaining.end(), step.qubit);
    if (pos_it == state.remaining.end()) {
        throw Error(ErrorKind::IncompletePolicy, "qubit measured twice at '" + state.history + "'");
    }
    const auto pos = static_cast<std::size_t>(pos_it - state.remaining.begin());

    ComplexMatrix sigma = state.sigma;
    ComplexMatrix dsigma = state.dsigma;
    if (state.remaining.size() == 1 && policy.correction == Correction::ParityZ &&
        state.parity % 2 == 1) {
        apply_sigma_z(sigma);
        apply_sigma_z(dsigma);
    }
    std::vector<std::size_t> rest = state.remaining;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
    for (int outcome = 0; outcome < 2; ++outcome) {
        const auto ket = step.basis.ket(outcome);
        WalkState child{kernels::contract_qubit(sigma, pos, ket),
                        kernels::contract_qubit(dsigma, pos, ket), rest,
                        state.history + static_cast<char>('0' + outcome),
                        state.parity + outcome};
        walk(policy, child, depth, visit);
    }
}

WalkState root_state(const ProbeFamily &family, double phi) {
    WalkState s{encode(family, phi).matrix(), d_rho_d_phi(family, phi), {}, "", 0};
    s.remaining.resize(family.qubit_count());
    for (std::size_t q = 0; q < s.remaining.size(); ++q) {
        s.remaining[q] = q;
    }
    return s;
}

void require_policy_for(const ProbeFamily &family, const AdaptivePolicy &policy) {
    if (policy.qubits != family.qubit_count()) {
        throw Error(ErrorKind::IncompletePolicy, "policy is for " + std::to_string(policy.qubits) +
                                                     " qubits, state has " +
                                                     std::to_string(family.qubit_count()));
    }
    policy.validate();
}

// Basis of the SLD of a one-qubit conditional state, which attains its QFI.
LocalBasis qubit_sld_basis(const ComplexMatrix &sigma, const ComplexMatrix &dsigma, double p,
                           double dp) {
    const ComplexMatrix rho = hermitian_part(sigma) * cplx{1.0 / p};
    const ComplexMatrix drho = hermitian_part(dsigma - rho * cplx{dp}) * cplx{1.0 / p};
    const auto eig = hermitian_eig(rho);
    const ComplexMatrix d_eig = eig.eigenvectors.adjoint() * drho * eig.eigenvectors;
    const double cutoff = tol::support_cutoff * std::max(eig.eigenvalues.back(), 0.0);
    ComplexMatrix l_eig(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const double s = eig.eigenvalues[i] + eig.eigenvalues[j];
            if (s > cutoff) {
                l_eig(i, j) = 2.0 * d_eig(i, j) / s;
            }
        }
    }
    if (l_eig.frobenius_norm() < 1e-14) {
        return LocalBasis::plus_minus();
    }
    const ComplexMatrix l = hermitian_part(eig.eigenvectors * l_eig * eig.eigenvectors.adjoint());
    const auto leig = hermitian_eig(l);
    return LocalBasis::from_ket({leig.eigenvectors(0, 0), leig.eigenvectors(1, 0)});
}

} // namespace

// ---------------------------------------------------------------------------

MeasureResult measure(const DensityMatrix &rho, const ComplexMatrix &drho, const Povm &povm,
                      bool with_post_states) {
    if (povm.dim() != rho.dim() || drho.dim() != rho.dim()) {
        throw Error(ErrorKind::DimMismatch, "measurement dimensions differ");
    }
    std::vector<double> p(povm.size());
    std::vector<double> dp(povm.size());
    std::vector<std::optional<DensityMatrix>> post(povm.size());
    for (std::size_t k = 0; k < povm.size(); ++k) {
        p[k] = povm.expectation(k, rho.matrix()).real();
        dp[k] = povm.expectation(k, drho).real();
        if (with_post_states && p[k] > tol::zero_probability) {
            const ComplexMatrix root = povm.sqrt_element(k);
            ComplexMatrix out = root * rho.matrix() * root;
            out *= 1.0 / p[k];
            post[k] = DensityMatrix::assume_valid(hermitian_part(out));
        }
    }
    return {OutcomeDistribution::single(std::move(p), std::move(dp)), std::move(post)};
}

ComplexMatrix cnot_cascade(std::size_t n) {
    if (n < 1 || n > 12) {
        throw Error(ErrorKind::DomainError, "CNOT cascade qubit count out of range");
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t top = dim >> 1;
    const std::size_t rest_mask = top - 1;
    ComplexMatrix v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t j = (i & top) ? (i ^ rest_mask) : i;
        v(j, i) = 1.0;
    }
    return v;
}

Povm coherent_nghz_readout(std::size_t n, double azimuth) {
    if (n < 1 || n > 12) {
        throw Error(ErrorKind::DomainError, "coherent readout qubit count out of range");
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t top = dim >> 1;
    const std::size_t rest_mask = top - 1;
    const LocalBasis first{std::numbers::pi / 2, azimuth};
    std::vector<Povm::Ket> kets;
    kets.reserve(dim);
    // V is a self-inverse permutation: |a⟩|r⟩ ↦ |a⟩|r ⊕ a·1…1⟩
    for (int outcome = 0; outcome < 2; ++outcome) {
        const auto m = first.ket(outcome);
        for (std::size_t r = 0; r < top; ++r) {
            Povm::Ket v(dim);
            v[r] = m[0];
            v[top | (r ^ rest_mask)] = m[1];
            kets.push_back(std::move(v));
        }
    }
    return Povm::from_kets(std::move(kets));
}

std::array<cplx, 2> LocalBasis::ket(int outcome) const {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    if (outcome == 0) {
        return {cplx{c, 0.0}, std::polar(s, varphi)};
    }
    return {-std::polar(s, -varphi), cplx{c, 0.0}};
}

LocalBasis LocalBasis::from_ket(const std::array<cplx, 2> &v) {
    const double a0 = std::abs(v[0]);
    const double a1 = std::abs(v[1]);
    LocalBasis b;
    b.theta = 2.0 * std::atan2(a1, a0);
    b.varphi = (a1 > 0.0 && a0 > 0.0) ? wrap_angle(std::arg(v[1]) - std::arg(v[0])) : 0.0;
    return b;
}

void AdaptivePolicy::validate() const {
    if (qubits < 1) {
        throw Error(ErrorKind::IncompletePolicy, "policy has no qubits");
    }
    // depth-first over all reachable histories
    std::function<void(const std::string &, std::set<std::size_t> &)> visit =
        [&](const std::string &history, std::set<std::size_t> &used) {
            if (history.size() == qubits) {
                return;
            }
            const auto it = steps.find(history);
            if (it == steps.end()) {
                throw Error(ErrorKind::IncompletePolicy, "no step for history '" + history + "'");
            }
            const std::size_t q = it->second.qubit;
            if (q >= qubits || used.count(q) != 0) {
                throw Error(ErrorKind::IncompletePolicy,
                            "invalid qubit " + std::to_string(q) + " at '" + history + "'");
            }
            used.insert(q);
            visit(history + '0', used);
            visit(history + '1', used);
            used.erase(q);
        };
    std::set<std::size_t> used;
    visit("", used);
}

OutcomeDistribution run_adaptive(const ProbeFamily &family, double phi,
                                 const AdaptivePolicy &policy) {
    require_policy_for(family, policy);
    const std::size_t n = family.qubit_count();
    std::vector<double> p(std::size_t{1} << n, 0.0);
    std::vector<double> dp(p.size(), 0.0);
    walk(policy, root_state(family, phi), n, [&](const WalkState &leaf) {
        const std::size_t idx = std::stoul(leaf.history, nullptr, 2);
        p[idx] = leaf.sigma(0, 0).real();
        dp[idx] = leaf.dsigma(0, 0).real();
    });
    return OutcomeDistribution(std::vector<std::size_t>(n, 2), std::move(p), std::move(dp));
}

std::vector<Branch> enumerate_branches(const ProbeFamily &family, double phi,
                                       const AdaptivePolicy &policy, std::size_t depth) {
    require_policy_for(family, policy);
    if (depth > family.qubit_count()) {
        throw Error(ErrorKind::DomainError, "depth exceeds the qubit count");
    }
    std::vector<Branch> out;
    walk(policy, root_state(family, phi), depth, [&](const WalkState &s) {
        Branch b;
        b.history = s.history;
        b.prob = s.sigma.trace().real();
        b.dprob = s.dsigma.trace().real();
        if (b.prob > tol::zero_probability) {
            ComplexMatrix post = hermitian_part(s.sigma);
            post *= 1.0 / b.prob;
            b.post_state = DensityMatrix::assume_valid(std::move(post));
        }
        out.push_back(std::move(b));
    });
    return out;
}

AdaptivePolicy paper_policy(std::size_t n, double phi, int sign) {
    if (n < 1) {
        throw Error(ErrorKind::DomainError, "policy needs at least one qubit");
    }
    if (sign != 1 && sign != -1) {
        throw Error(ErrorKind::DomainError, "sign must be +1 or -1");
    }
    AdaptivePolicy policy;
    policy.qubits = n;
    policy.correction = Correction::ParityZ;
    const LocalBasis last{std::numbers::pi / 2,
                          wrap_angle(sign * static_cast<double>(n) * phi + std::numbers::pi / 2)};
    for (std::size_t level = 0; level < n; ++level) {
        const LocalBasis basis = (level + 1 == n) ? last : LocalBasis::plus_minus();
        for (std::size_t v = 0; v < (std::size_t{1} << level); ++v) {
            policy.steps[history_string(v, level)] = PolicyStep{level, basis};
        }
    }
    return policy;
}

// ---------------------------------------------------------------------------
// Optimizer

namespace {

// Fixed-order tree with heap-indexed non-final nodes: node id at (level, v) is
// 2^level − 1 + v, children 2id+1 (outcome 0) and 2id+2 (outcome 1).
class AdaptiveSearch {
  public:
    AdaptiveSearch(const ProbeFamily &family, double phi)
        : n_(family.qubit_count()), internal_((std::size_t{1} << (n_ - 1)) - 1),
          bases_(internal_, LocalBasis::plus_minus()), sigma_(internal_), dsigma_(internal_) {
        rho_ = encode(family, phi).matrix();
        drho_ = d_rho_d_phi(family, phi);
    }

    [[nodiscard]] std::size_t internal_nodes() const noexcept { return internal_; }
    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }
    LocalBasis &basis(std::size_t id) { return bases_[id]; }

    static std::size_t level_of(std::size_t id) {
        return static_cast<std::size_t>(std::bit_width(id + 1) - 1);
    }

    // refresh the cached conditional operator at `id` from its parent
    void refresh(std::size_t id) {
        if (id == 0) {
            sigma_[0] = rho_;
            dsigma_[0] = drho_;
            return;
        }
        const std::size_t parent = (id - 1) / 2;
        const int outcome = static_cast<int>((id - 1) % 2);
        const auto ket = bases_[parent].ket(outcome);
        sigma_[id] = kernels::contract_qubit(sigma_[parent], 0, ket);
        dsigma_[id] = kernels::contract_qubit(dsigma_[parent], 0, ket);
    }

    // Σ over leaves below `id` of (∂p)²/p with `basis` at id
    double subtree(std::size_t id, const LocalBasis &basis) const {
        return descend(sigma_[id], dsigma_[id], level_of(id), id, &basis, nullptr);
    }

    void count(std::size_t k) { evaluations_ += k; }

    AdaptivePolicy policy() const {
        AdaptivePolicy out;
        out.qubits = n_;
        for (std::size_t id = 0; id < internal_; ++id) {
            const std::size_t level = level_of(id);
            out.steps[history_string(id + 1 - (std::size_t{1} << level), level)] =
                PolicyStep{level, bases_[id]};
        }
        std::vector<std::pair<std::string, LocalBasis>> finals;
        if (internal_ == 0) {
            LocalBasis b;
            final_contribution(rho_, drho_, &b);
            finals.emplace_back("", b);
        } else {
            descend(rho_, drho_, 0, 0, nullptr, &finals);
        }
        for (const auto &[h, b] : finals) {
            out.steps[h] = PolicyStep{n_ - 1, b};
        }
        return out;
    }

  private:
    using FinalLog = std::vector<std::pair<std::string, LocalBasis>>;

    static double final_contribution(const ComplexMatrix &sigma, const ComplexMatrix &dsigma,
                                     LocalBasis *chosen) {
        const double p = sigma.trace().real();
        const double dp = dsigma.trace().real();
        if (p <= tol::zero_probability) {
            if (chosen != nullptr) {
                *chosen = LocalBasis::plus_minus();
            }
            return 0.0;
        }
        const LocalBasis b = qubit_sld_basis(sigma, dsigma, p, dp);
        if (chosen != nullptr) {
            *chosen = b;
        }
        double f = 0.0;
        for (int o = 0; o < 2; ++o) {
            const auto k = b.ket(o);
            const double po = (std::conj(k[0]) * (sigma(0, 0) * k[0] + sigma(0, 1) * k[1]) +
                               std::conj(k[1]) * (sigma(1, 0) * k[0] + sigma(1, 1) * k[1]))
                                  .real();
            const double dpo = (std::conj(k[0]) * (dsigma(0, 0) * k[0] + dsigma(0, 1) * k[1]) +
                                std::conj(k[1]) * (dsigma(1, 0) * k[0] + dsigma(1, 1) * k[1]))
                                   .real();
            if (po > tol::zero_probability) {
                f += dpo * dpo / po;
            }
        }
        return f;
    }

    double descend(const ComplexMatrix &sigma, const ComplexMatrix &dsigma, std::size_t level,
                   std::size_t id, const LocalBasis *override_basis, FinalLog *finals) const {
        if (level + 1 == n_) {
            LocalBasis chosen;
            const double f = final_contribution(sigma, dsigma, finals ? &chosen : nullptr);
            if (finals != nullptr) {
                finals->emplace_back(history_string(id + 1 - (std::size_t{1} << level), level),
                                     chosen);
            }
            return f;
        }
        const LocalBasis &b = override_basis ? *override_basis : bases_[id];
        double f = 0.0;
        for (int o = 0; o < 2; ++o) {
            const auto ket = b.ket(o);
            const ComplexMatrix s = kernels::contract_qubit(sigma, 0, ket);
            const ComplexMatrix ds = kernels::contract_qubit(dsigma, 0, ket);
            f += descend(s, ds, level + 1, 2 * id + 1 + static_cast<std::size_t>(o), nullptr,
                         finals);
        }
        return f;
    }

    std::size_t n_;
    std::size_t internal_;
    std::vector<LocalBasis> bases_;
    std::vector<ComplexMatrix> sigma_;
    std::vector<ComplexMatrix> dsigma_;
    ComplexMatrix rho_;
    ComplexMatrix drho_;
    std::size_t evaluations_ = 0;
};

} // namespace

AdaptiveOptimum optimize_adaptive(const ProbeFamily &family, double phi,
                                  const OptimizerConfig &config) {
    const std::size_t n = family.qubit_count();
    if (n < 1 || n > tol::optimizer_qubit_budget) {
        throw Error(ErrorKind::DomainError, "adaptive search supports 1.." +
                                                std::to_string(tol::optimizer_qubit_budget) +
                                                " qubits");
    }
    if (config.grid_theta < 2 || config.grid_varphi < 1) {
        throw Error(ErrorKind::DomainError, "optimizer grid too small");
    }
    AdaptiveSearch search(family, phi);
    AdaptiveOptimum result;

    double varphi_offset = 0.0;
    if (config.seed != 0) {
        std::mt19937_64 rng(config.seed);
        varphi_offset = std::uniform_real_distribution<double>(0.0, two_pi)(rng);
    }
    std::vector<LocalBasis> grid;
    for (std::size_t i = 0; i < config.grid_theta; ++i) {
        for (std::size_t j = 0; j < config.grid_varphi; ++j) {
            grid.push_back(normalized(
                {std::numbers::pi * static_cast<double>(i) / static_cast<double>(config.grid_theta - 1),
                 varphi_offset + two_pi * static_cast<double>(j) /
                                     static_cast<double>(config.grid_varphi)}));
        }
    }

    const auto over_budget = [&] { return search.evaluations() > config.max_evaluations; };

    // coarse grid, top-down
    for (std::size_t id = 0; id < search.internal_nodes() && !over_budget(); ++id) {
        search.refresh(id);
        const LocalBasis current = search.basis(id);
        std::vector<double> values(grid.size());
        const auto g = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < g; ++k) {
            values[static_cast<std::size_t>(k)] = search.subtree(id, grid[static_cast<std::size_t>(k)]);
        }
        search.count(grid.size() + 1);
        double best = search.subtree(id, current);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (values[k] > best) {
                best = values[k];
                search.basis(id) = grid[k];
            }
        }
    }

    // coordinate descent with step halving
    double step = config.initial_step;
    for (std::size_t iter = 0; iter < config.max_iterations && search.internal_nodes() > 0;
         ++iter) {
        if (over_budget()) {
            break;
        }
        bool improved = false;
        for (std::size_t id = 0; id < search.internal_nodes(); ++id) {
            search.refresh(id);
            double current = search.subtree(id, search.basis(id));
            search.count(1);
            for (int coord = 0; coord < 2; ++coord) {
                for (double dir : {1.0, -1.0}) {
                    LocalBasis trial = search.basis(id);
                    (coord == 0 ? trial.theta : trial.varphi) += dir * step;
                    trial = normalized(trial);
                    const double v = search.subtree(id, trial);
                    search.count(1);
                    if (v > current + 1e-15) {
                        current = v;
                        search.basis(id) = trial;
                        improved = true;
                    }
                }
            }
        }
        if (!improved) {
            step *= 0.5;
            if (step < config.min_step) {
                break;
            }
        }
    }

    result.budget_exceeded = over_budget();
    result.policy = search.policy();
    result.fisher = classical_fisher(run_adaptive(family, phi, result.policy));
    result.evaluations = search.evaluations();
    return result;
}

} // namespace qmetro
