#ifndef PHOTSUB_CONFIG_HPP
#define PHOTSUB_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace photsub {

/// Raised for malformed or inconsistent experiment configs; the message names
/// the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TargetKind { CatEven, CatOdd, Plus, Ghz, Cccs };

TargetKind target_kind_from_string(const std::string& s);
const char* to_string(TargetKind kind);

struct SweepSpec {
    std::string variable;  // gamma_q | gamma_p | tau | r
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
};

/// One experiment: a state section (hamiltonian coupling matrix with integer
/// entries in {-1, 0, 1} plus a strength, or an explicit covariance matrix),
/// a subtraction section, a target section, and optional sweep and oracle
/// sections.
struct ExperimentConfig {
    std::optional<Eigen::MatrixXd> g_matrix;
    double r = 0.0;
    std::optional<Eigen::MatrixXd> covariance;

    double tau = 0.0;
    std::vector<int> pattern;

    TargetKind kind = TargetKind::CatEven;
    double gamma_q = 0.0;
    double gamma_p = 0.0;
    int modes = 0;
    std::vector<std::pair<int, int>> edges;

    std::optional<SweepSpec> sweep;

    bool oracle_enabled = false;
    int oracle_cutoff = 30;
};

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace photsub

#endif
