// qmetro: command-line front end for the Fisher-information toolkit.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmetro/acceptance.hpp"
#include "qmetro/error.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/harness.hpp"
#include "qmetro/io.hpp"
#include "qmetro/tolerances.hpp"

namespace {

using nlohmann::json;
using namespace qmetro;

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_input_error = 2;

struct StateOptions {
    std::string state_file;
    std::string kind = "werner";
    std::size_t n = 2;
    double eta = 1.0;
    int sign = 1;
    double phi = tol::default_phi;
};

void add_state_options(CLI::App *cmd, StateOptions &s) {
    cmd->add_option("--state", s.state_file, "State descriptor JSON file");
    cmd->add_option("--kind", s.kind, "Built-in probe when --state is absent")
        ->check(CLI::IsMember({"werner", "nghz", "bell"}));
    cmd->add_option("--n", s.n, "Qubit count")->check(CLI::PositiveNumber);
    cmd->add_option("--eta", s.eta, "Signal strength")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--sign", s.sign, "Encoding direction")->check(CLI::IsMember({-1, 1}));
    cmd->add_option("--phi", s.phi, "Phase at which derivatives are taken");
}

StateDescriptor descriptor(const StateOptions &s) {
    if (!s.state_file.empty()) {
        return parse_state_descriptor(read_json_file(s.state_file));
    }
    StateDescriptor d;
    d.kind = s.kind;
    d.n = s.kind == "bell" ? 2 : s.n;
    d.eta = s.kind == "werner" ? s.eta : 1.0;
    d.sign = s.sign;
    if (d.n > tol::dense_qubit_budget) {
        throw Error(ErrorKind::DomainError,
                    "n = " + std::to_string(d.n) + " exceeds the dense budget of " +
                        std::to_string(tol::dense_qubit_budget) + " qubits");
    }
    return d;
}

void emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
}

std::vector<std::size_t> parse_n_list(const std::vector<std::string> &items) {
    std::vector<std::size_t> values;
    for (const auto &item : items) {
        const auto colon = item.find(':');
        try {
            if (colon == std::string::npos) {
                values.push_back(std::stoul(item));
                continue;
            }
            const std::size_t lo = std::stoul(item.substr(0, colon));
            const std::size_t hi = std::stoul(item.substr(colon + 1));
            for (std::size_t n = lo; n <= hi; ++n) {
                values.push_back(n);
            }
        } catch (const std::logic_error &) {
            throw Error(ErrorKind::Schema, "bad --n entry '" + item + "'");
        }
    }
    return values;
}

json rows_to_json(const std::vector<SweepRow> &rows) {
    json out = json::array();
    for (const auto &r : rows) {
        out.push_back({{"kind", r.kind},
                       {"n", r.n},
                       {"eta", r.eta},
                       {"phi", r.phi},
                       {"strategy", to_string(r.strategy)},
                       {"fisher", std::isnan(r.fisher) ? json(nullptr) : json(r.fisher)},
                       {"closed_form", r.closed_form},
                       {"abs_err", std::isnan(r.abs_err) ? json(nullptr) : json(r.abs_err)},
                       {"runtime_ms", r.runtime_ms}});
    }
    return out;
}

int run(int argc, char **argv) {
    CLI::App app{"Classical and quantum Fisher information for noisy phase-estimation probes"};
    app.require_subcommand(1);

    auto *verify = app.add_subcommand("verify", "Run the acceptance suite");

    StateOptions qfi_state;
    std::string qfi_out;
    auto *qfi_cmd = app.add_subcommand("qfi", "Quantum Fisher information and SLD report");
    add_state_options(qfi_cmd, qfi_state);
    qfi_cmd->add_option("--out", qfi_out, "Write the JSON record here");

    StateOptions ad_state;
    std::string ad_policy;
    std::string ad_out;
    std::string ad_strategy = "paper-policy";
    auto *ad_cmd = app.add_subcommand("adaptive", "Fisher information of an adaptive local readout");
    add_state_options(ad_cmd, ad_state);
    ad_cmd->add_option("--policy", ad_policy, "Policy JSON file (default: built-in policy)");
    ad_cmd->add_option("--strategy", ad_strategy, "Strategy recorded alongside the result")
        ->check(CLI::IsMember({"coherent", "adaptive", "paper-policy", "optimize"}));
    ad_cmd->add_option("--out", ad_out, "Write the JSON record here");

    StateOptions opt_state;
    std::string opt_out;
    std::string opt_policy_out;
    std::uint64_t opt_seed = 0;
    auto *opt_cmd = app.add_subcommand("optimize", "Search adaptive local measurement policies");
    add_state_options(opt_cmd, opt_state);
    opt_cmd->add_option("--seed", opt_seed, "Grid offset seed");
    opt_cmd->add_option("--out", opt_out, "Write the JSON record here");
    opt_cmd->add_option("--policy-out", opt_policy_out, "Write the optimal policy here");

    StateOptions wit_state;
    std::string wit_out;
    auto *wit_cmd = app.add_subcommand("witness", "Test for a phase-independent optimal measurement");
    add_state_options(wit_cmd, wit_state);
    wit_cmd->add_option("--out", wit_out, "Write the JSON record here");

    std::string sw_kind = "werner";
    std::vector<std::string> sw_n{"2"};
    std::vector<double> sw_eta{1.0};
    std::vector<double> sw_phi{tol::default_phi};
    std::vector<std::string> sw_strategy{"coherent"};
    std::string sw_out;
    std::string sw_format = "csv";
    std::string sw_policy;
    std::uint64_t sw_seed = 0;
    bool sw_closed_only = false;
    bool sw_no_timing = false;
    int sw_sign = 1;
    auto *sw_cmd = app.add_subcommand("sweep", "Grid sweep against the closed forms");
    sw_cmd->add_option("--kind", sw_kind, "Probe kind")->check(CLI::IsMember({"werner", "nghz"}));
    sw_cmd->add_option("--n", sw_n, "Qubit counts, comma list or lo:hi")->delimiter(',');
    sw_cmd->add_option("--eta", sw_eta, "Signal strengths")->delimiter(',')->check(CLI::Range(0.0, 1.0));
    sw_cmd->add_option("--phi", sw_phi, "Phases")->delimiter(',');
    sw_cmd->add_option("--strategy", sw_strategy, "Strategies")
        ->delimiter(',')
        ->check(CLI::IsMember({"coherent", "adaptive", "paper-policy", "optimize"}));
    sw_cmd->add_option("--out", sw_out, "Output path (default stdout)");
    sw_cmd->add_option("--format", sw_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sw_cmd->add_option("--policy", sw_policy, "Policy file for the adaptive strategy");
    sw_cmd->add_option("--seed", sw_seed, "Optimizer grid seed");
    sw_cmd->add_option("--sign", sw_sign, "Encoding direction")->check(CLI::IsMember({-1, 1}));
    sw_cmd->add_flag("--closed-form-only", sw_closed_only, "Skip dense evaluation");
    sw_cmd->add_flag("--no-timing", sw_no_timing, "Write runtime_ms as 0");

    std::size_t forms_n = 2;
    double forms_eta = 1.0;
    auto *forms_cmd = app.add_subcommand("forms", "Evaluate the closed-form Fisher information");
    forms_cmd->add_option("--n", forms_n, "Qubit count")->check(CLI::PositiveNumber);
    forms_cmd->add_option("--eta", forms_eta, "Signal strength")->check(CLI::Range(0.0, 1.0));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_input_error;
    }

    if (verify->parsed()) {
        int failures = 0;
        for (const auto &r : run_acceptance()) {
            std::cout << format_result(r) << '\n';
            failures += (!r.informational && !r.passed) ? 1 : 0;
        }
        std::cout << failures << " criteria failed\n";
        return failures == 0 ? exit_ok : exit_check_failed;
    }
    if (qfi_cmd->parsed()) {
        const auto rec = run_scenario(descriptor(qfi_state), Strategy::Coherent, qfi_state.phi);
        emit(rec.dump(2) + "\n", qfi_out);
        return exit_ok;
    }
    if (ad_cmd->parsed()) {
        const auto desc = descriptor(ad_state);
        std::optional<AdaptivePolicy> policy;
        if (!ad_policy.empty()) {
            policy = parse_policy(read_json_file(ad_policy));
        }
        const Strategy s = policy ? Strategy::Adaptive : parse_strategy(ad_strategy);
        auto rec = run_scenario(desc, s, ad_state.phi, policy);
        const ProbeFamily family = build_family(desc);
        const AdaptivePolicy used =
            policy ? *policy : paper_policy(family.qubit_count(), ad_state.phi, family.sign());
        if (s != Strategy::Optimize && family.qubit_count() > 1) {
            const auto dist = run_adaptive(family, ad_state.phi, used);
            std::vector<std::size_t> order(dist.parts());
            for (std::size_t k = 0; k < order.size(); ++k) {
                order[k] = order.size() - 1 - k;
            }
            json chain = json::object();
            for (const auto &[name, value] : chain_decompose(dist, order)) {
                chain[name] = value;
            }
            rec["chain"] = chain;
            rec["policy"] = to_json(used);
        }
        emit(rec.dump(2) + "\n", ad_out);
        return exit_ok;
    }
    if (opt_cmd->parsed()) {
        const auto desc = descriptor(opt_state);
        if (desc.n > tol::optimizer_qubit_budget) {
            throw Error(ErrorKind::DomainError, "optimizer supports at most " +
                                                    std::to_string(tol::optimizer_qubit_budget) +
                                                    " qubits");
        }
        OptimizerConfig cfg;
        cfg.seed = opt_seed;
        const auto result = optimize_adaptive(build_family(desc), opt_state.phi, cfg);
        json rec;
        rec["state"] = to_json(desc);
        rec["phi"] = opt_state.phi;
        rec["fisher"] = result.fisher;
        rec["qfi"] = qfi(build_family(desc), opt_state.phi);
        rec["evaluations"] = result.evaluations;
        rec["budget_exceeded"] = result.budget_exceeded;
        rec["policy"] = to_json(result.policy);
        if (!opt_policy_out.empty()) {
            write_text_file(opt_policy_out, canonical_policy_text(result.policy));
        }
        emit(rec.dump(2) + "\n", opt_out);
        return exit_ok;
    }
    if (wit_cmd->parsed()) {
        const auto rec = run_scenario(descriptor(wit_state), Strategy::Coherent, wit_state.phi);
        json out = {{"state", rec["state"]}, {"phi", rec["phi"]}, {"witness", rec["witness"]},
                    {"qfi", rec["fisher"]["qfi"]}};
        emit(out.dump(2) + "\n", wit_out);
        return exit_ok;
    }
    if (sw_cmd->parsed()) {
        SweepSpec spec;
        spec.kind = sw_kind;
        spec.n_values = parse_n_list(sw_n);
        spec.etas = sw_eta;
        spec.phis = sw_phi;
        spec.strategies.clear();
        for (const auto &s : sw_strategy) {
            spec.strategies.push_back(parse_strategy(s));
        }
        spec.closed_form_only = sw_closed_only;
        spec.timing = !sw_no_timing;
        spec.sign = sw_sign;
        spec.optimizer.seed = sw_seed;
        if (!sw_policy.empty()) {
            spec.policy = parse_policy(read_json_file(sw_policy));
        }
        const auto rows = run_sweep(spec);
        emit(sw_format == "csv" ? to_csv(rows) : rows_to_json(rows).dump(2) + "\n", sw_out);
        return exit_ok;
    }
    if (forms_cmd->parsed()) {
        json out;
        out["n"] = forms_n;
        out["eta"] = forms_eta;
        for (const auto &form : closed_forms()) {
            if (form.name == "f_co_conditional" && forms_n < 2) {
                continue;
            }
            out[form.name] = form.evaluate(forms_n, forms_eta);
        }
        if (forms_eta > 0.0) {
            out["precision_gain"] = precision_gain(forms_n, forms_eta);
        }
        std::cout << out.dump(2) << '\n';
        return exit_ok;
    }
    return exit_input_error;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::NoConvergence:
        case ErrorKind::SingularFisher:
            return exit_check_failed;
        default:
            return exit_input_error;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
}
