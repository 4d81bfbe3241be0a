#ifndef PHOTSUB_RUNNER_HPP
#define PHOTSUB_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "photsub/config.hpp"
#include "photsub/fidelity.hpp"
#include "photsub/fock_oracle.hpp"

namespace photsub {

/// One CSV output row. Fields left disengaged render as empty strings.
struct ResultRow {
    std::string sweep_value;
    std::optional<double> fidelity;
    std::optional<double> ratio;
    std::optional<double> probability;
    std::optional<double> bound_general;
    std::optional<double> bound_vacuum;
    std::optional<std::string> parity;
    std::optional<double> oracle_fidelity;
    std::optional<double> norm_deficit;
};

inline constexpr const char* kCsvHeader =
    "sweep_value,F,R,P_m,bound_general,bound_vacuum,parity_class,oracle_F,norm_deficit";

std::string format_double(double v);
std::string render_csv(const std::vector<ResultRow>& rows);

GaussianState build_state(const ExperimentConfig& cfg, double r_override);
BinaryPhaseTarget build_target(const ExperimentConfig& cfg, double gamma_q, double gamma_p);

/// Full fidelity pipeline over the sweep (or the single configured point).
/// Points are evaluated concurrently; rows come back in sweep order.
std::vector<ResultRow> run(const ExperimentConfig& cfg, int threads = 1);

/// Analytic bounds only; no moment integrals are evaluated.
std::vector<ResultRow> run_bounds(const ExperimentConfig& cfg);

/// Heralding probabilities for every pattern with at most max_total photons;
/// rows with probability below 1e-12 are suppressed. The pattern is rendered
/// into sweep_value as semicolon-joined counts.
std::vector<ResultRow> run_probabilities(const ExperimentConfig& cfg, int max_total);

struct OracleCheckResult {
    int tuples = 0;
    double max_fidelity_gap = 0.0;
    double max_probability_gap = 0.0;
    bool ok(double tol = 1e-6) const {
        return max_fidelity_gap < tol && max_probability_gap < tol;
    }
};

/// Compares the moment-engine path against the truncated-Fock path on a
/// built-in grid of states, patterns, and targets.
OracleCheckResult oracle_check_default_grid(int threads = 1, int cutoff = 30);

}  // namespace photsub

#endif
