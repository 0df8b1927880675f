#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmetro/io.hpp"
#include "qmetro/readout.hpp"

namespace qmetro {

// ---------------------------------------------------------------------------
// Closed-form Fisher information for the noisy GHZ (Werner-type) probes

double f_co_w(double eta);                  // 8η²/(1+η)
double f_ad_w(double eta);                  // 4η²
double f_co_wn(std::size_t n, double eta);  // 2^N N²η² / (2^N η + 2(1−η))
double f_ad_wn(std::size_t n, double eta);  // N²η²
/// Coherent QFI of the (N−1)-qubit conditional state left after one local
/// measurement along m: 4·2^{N−1}/(2^{N−1} − (2^{N−1}−2)(1−η)) · N²|m₀m₁|²η².
double f_co_conditional(std::size_t n, double eta, double m0m1_abs);

struct ClosedForm {
    std::string name;
    int arity = 2; // 1: η only, 2: (N, η)
    std::function<double(std::size_t, double)> evaluate;
};

const std::vector<ClosedForm> &closed_forms();

/// √(F_co/F_ad) for W^N; throws DomainError at η = 0.
double precision_gain(std::size_t n, double eta);

// ---------------------------------------------------------------------------
// Sweeps and single scenarios

enum class Strategy { Coherent, Adaptive, PaperPolicy, Optimize };

const char *to_string(Strategy s) noexcept;
Strategy parse_strategy(const std::string &name);

struct SweepSpec {
    std::string kind = "werner"; // werner | nghz
    std::vector<std::size_t> n_values{2};
    std::vector<double> etas{1.0};
    std::vector<double> phis{0.7};
    std::vector<Strategy> strategies{Strategy::Coherent};
    bool closed_form_only = false;
    bool timing = true; // false writes runtime_ms = 0 for byte-reproducible output
    int sign = 1;
    std::optional<AdaptivePolicy> policy; // used by Strategy::Adaptive
    OptimizerConfig optimizer;
};

struct SweepRow {
    std::string kind;
    std::size_t n = 0;
    double eta = 0.0;
    double phi = 0.0;
    Strategy strategy = Strategy::Coherent;
    double fisher = 0.0; // NaN when only the closed form was evaluated
    double closed_form = 0.0;
    double abs_err = 0.0;
    double runtime_ms = 0.0;
};

/// Rows in grid order: kind, n, eta, phi, strategy (outer to inner).
std::vector<SweepRow> run_sweep(const SweepSpec &spec);

inline constexpr const char *csv_header =
    "kind,n,eta,phi,strategy,fisher,closed_form,abs_err,runtime_ms";
std::string to_csv(const std::vector<SweepRow> &rows);

/// Round-trip-exact decimal (17 significant digits).
std::string format_double(double x);

/// Fisher value for one strategy on one family.
double strategy_fisher(const ProbeFamily &family, double phi, Strategy strategy,
                       const std::optional<AdaptivePolicy> &policy = std::nullopt,
                       const OptimizerConfig &optimizer = {});

/// Closed form matching a descriptor and strategy, if one exists.
std::optional<double> closed_form_for(const StateDescriptor &desc, Strategy strategy);

nlohmann::json run_scenario(const StateDescriptor &desc, Strategy strategy, double phi,
                            const std::optional<AdaptivePolicy> &policy = std::nullopt,
                            const OptimizerConfig &optimizer = {});

} // namespace qmetro
