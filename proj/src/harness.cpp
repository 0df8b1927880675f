#include "qmetro/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "qmetro/error.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/tolerances.hpp"

namespace qmetro {

namespace {

void check_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw Error(ErrorKind::DomainError, "eta must lie in [0, 1]");
    }
}

void check_n(std::size_t n, std::size_t min_n = 1) {
    if (n < min_n || n > 62) {
        throw Error(ErrorKind::DomainError, "qubit count out of range");
    }
}

double pow2(std::size_t n) { return std::ldexp(1.0, static_cast<int>(n)); }

} // namespace

double f_co_w(double eta) {
    check_eta(eta);
    return 8.0 * eta * eta / (1.0 + eta);
}

double f_ad_w(double eta) {
    check_eta(eta);
    return 4.0 * eta * eta;
}

double f_co_wn(std::size_t n, double eta) {
    check_n(n);
    check_eta(eta);
    const double d = pow2(n);
    const double nn = static_cast<double>(n);
    return d / (d * eta + 2.0 * (1.0 - eta)) * nn * nn * eta * eta;
}

double f_ad_wn(std::size_t n, double eta) {
    check_n(n);
    check_eta(eta);
    const double nn = static_cast<double>(n);
    return nn * nn * eta * eta;
}

double f_co_conditional(std::size_t n, double eta, double m0m1_abs) {
    check_n(n, 2);
    check_eta(eta);
    if (!(m0m1_abs >= 0.0 && m0m1_abs <= 0.5)) {
        throw Error(ErrorKind::DomainError, "|m0 m1| must lie in [0, 1/2]");
    }
    const double d = pow2(n - 1);
    const double nn = static_cast<double>(n);
    return 4.0 * d / (d - (d - 2.0) * (1.0 - eta)) * nn * nn * m0m1_abs * m0m1_abs * eta * eta;
}

const std::vector<ClosedForm> &closed_forms() {
    static const std::vector<ClosedForm> forms = {
        {"f_co_w", 1, [](std::size_t, double eta) { return f_co_w(eta); }},
        {"f_ad_w", 1, [](std::size_t, double eta) { return f_ad_w(eta); }},
        {"f_co_wn", 2, [](std::size_t n, double eta) { return f_co_wn(n, eta); }},
        {"f_ad_wn", 2, [](std::size_t n, double eta) { return f_ad_wn(n, eta); }},
        {"f_co_conditional", 2,
         [](std::size_t n, double eta) { return f_co_conditional(n, eta, 0.5); }},
    };
    return forms;
}

double precision_gain(std::size_t n, double eta) {
    const double ad = f_ad_wn(n, eta);
    if (ad == 0.0) {
        throw Error(ErrorKind::DomainError, "adaptive Fisher information vanishes at eta = 0");
    }
    return std::sqrt(f_co_wn(n, eta) / ad);
}

const char *to_string(Strategy s) noexcept {
    switch (s) {
    case Strategy::Coherent: return "coherent";
    case Strategy::Adaptive: return "adaptive";
    case Strategy::PaperPolicy: return "paper-policy";
    case Strategy::Optimize: return "optimize";
    }
    return "unknown";
}

Strategy parse_strategy(const std::string &name) {
    for (Strategy s : {Strategy::Coherent, Strategy::Adaptive, Strategy::PaperPolicy,
                       Strategy::Optimize}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw Error(ErrorKind::Schema, "unknown strategy '" + name + "'");
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double strategy_fisher(const ProbeFamily &family, double phi, Strategy strategy,
                       const std::optional<AdaptivePolicy> &policy,
                       const OptimizerConfig &optimizer) {
    switch (strategy) {
    case Strategy::Coherent:
        return qfi(family, phi);
    case Strategy::Adaptive:
        if (policy) {
            return classical_fisher(run_adaptive(family, phi, *policy));
        }
        [[fallthrough]];
    case Strategy::PaperPolicy:
        return classical_fisher(
            run_adaptive(family, phi, paper_policy(family.qubit_count(), phi, family.sign())));
    case Strategy::Optimize:
        return optimize_adaptive(family, phi, optimizer).fisher;
    }
    return 0.0;
}

std::optional<double> closed_form_for(const StateDescriptor &desc, Strategy strategy) {
    if (desc.generator) {
        return std::nullopt;
    }
    double eta = 0.0;
    if (desc.kind == "werner") {
        eta = desc.eta;
    } else if (desc.kind == "nghz" || desc.kind == "bell") {
        eta = 1.0;
    } else {
        return std::nullopt;
    }
    return strategy == Strategy::Coherent ? f_co_wn(desc.n, eta) : f_ad_wn(desc.n, eta);
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    if (spec.kind != "werner" && spec.kind != "nghz") {
        throw Error(ErrorKind::Schema, "sweep kind must be werner or nghz");
    }
    if (spec.n_values.empty() || spec.etas.empty() || spec.phis.empty() ||
        spec.strategies.empty()) {
        throw Error(ErrorKind::Schema, "sweep grids must be non-empty");
    }
    for (std::size_t n : spec.n_values) {
        if (n < 1) {
            throw Error(ErrorKind::DomainError, "n must be at least 1");
        }
        if (!spec.closed_form_only && n > tol::dense_qubit_budget) {
            throw Error(ErrorKind::DomainError,
                        "n = " + std::to_string(n) + " exceeds the dense budget of " +
                            std::to_string(tol::dense_qubit_budget) +
                            " qubits; use --closed-form-only");
        }
    }
    const std::vector<double> etas = spec.kind == "nghz" ? std::vector<double>{1.0} : spec.etas;

    std::vector<SweepRow> rows;
    for (std::size_t n : spec.n_values) {
        for (double eta : etas) {
            for (double phi : spec.phis) {
                for (Strategy s : spec.strategies) {
                    SweepRow r;
                    r.kind = spec.kind;
                    r.n = n;
                    r.eta = eta;
                    r.phi = phi;
                    r.strategy = s;
                    rows.push_back(r);
                }
            }
        }
    }

    const auto count = static_cast<std::ptrdiff_t>(rows.size());
    std::vector<std::string> errors(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        SweepRow &r = rows[static_cast<std::size_t>(k)];
        try {
            StateDescriptor desc;
            desc.kind = r.kind;
            desc.n = r.n;
            desc.eta = r.eta;
            desc.sign = spec.sign;
            r.closed_form = *closed_form_for(desc, r.strategy);
            if (spec.closed_form_only) {
                r.fisher = std::numeric_limits<double>::quiet_NaN();
                r.abs_err = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            const auto start = std::chrono::steady_clock::now();
            const ProbeFamily family = build_family(desc);
            r.fisher = strategy_fisher(family, r.phi, r.strategy, spec.policy, spec.optimizer);
            const auto stop = std::chrono::steady_clock::now();
            r.abs_err = std::abs(r.fisher - r.closed_form);
            r.runtime_ms =
                spec.timing ? std::chrono::duration<double, std::milli>(stop - start).count() : 0.0;
        } catch (const std::exception &e) {
            errors[static_cast<std::size_t>(k)] = e.what();
        }
    }
    for (const auto &e : errors) {
        if (!e.empty()) {
            throw Error(ErrorKind::DomainError, "sweep point failed: " + e);
        }
    }
    return rows;
}

std::string to_csv(const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    out << csv_header << '\n';
    for (const auto &r : rows) {
        out << r.kind << ',' << r.n << ',' << format_double(r.eta) << ','
            << format_double(r.phi) << ',' << to_string(r.strategy) << ','
            << format_double(r.fisher) << ',' << format_double(r.closed_form) << ','
            << format_double(r.abs_err) << ',' << format_double(r.runtime_ms) << '\n';
    }
    return out.str();
}

nlohmann::json run_scenario(const StateDescriptor &desc, Strategy strategy, double phi,
                            const std::optional<AdaptivePolicy> &policy,
                            const OptimizerConfig &optimizer) {
    if (desc.n > tol::dense_qubit_budget) {
        throw Error(ErrorKind::DomainError, "state exceeds the dense qubit budget");
    }
    const ProbeFamily family = build_family(desc);
    nlohmann::json record;
    record["state"] = to_json(desc);
    record["phi"] = phi;
    record["strategy"] = to_string(strategy);
    record["qubits"] = family.qubit_count();

    const double q = qfi(family, phi);
    const SldResult l = sld(family, phi);
    nlohmann::json fisher;
    fisher["qfi"] = q;
    fisher["sld_trace_identity"] = frobenius_inner(l.l, encode(family, phi).matrix() * l.l).real();
    if (strategy == Strategy::Optimize) {
        const auto opt = optimize_adaptive(family, phi, optimizer);
        fisher["strategy"] = opt.fisher;
        record["policy"] = to_json(opt.policy);
        record["budget_exceeded"] = opt.budget_exceeded;
    } else {
        fisher["strategy"] = strategy_fisher(family, phi, strategy, policy, optimizer);
    }
    if (const auto cf = closed_form_for(desc, strategy)) {
        fisher["closed_form"] = *cf;
        fisher["abs_err"] = std::abs(fisher["strategy"].get<double>() - *cf);
    }
    record["fisher"] = fisher;
    record["sld_residual"] = l.residual;

    const WitnessReport w = global_optimality_witness(family, phi);
    record["witness"] = {
        {"commutator_trace", {w.commutator_trace.real(), w.commutator_trace.imag()}},
        {"target_trace", {w.target_trace.real(), w.target_trace.imag()}},
        {"residual", w.residual},
        {"scale", w.scale},
        {"full_rank", w.full_rank},
        {"verdict", to_string(w.verdict)},
    };
    return record;
}

} // namespace qmetro
