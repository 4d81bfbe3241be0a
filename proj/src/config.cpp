#include "photsub/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace photsub {

namespace {

using nlohmann::json;

Eigen::MatrixXd parse_matrix(const json& rows, const std::string& field,
                             bool integer_entries) {
    if (!rows.is_array() || rows.empty()) {
        throw ConfigError(field + ": expected a non-empty array of rows");
    }
    const std::size_t n = rows.size();
    Eigen::MatrixXd m(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != n) {
            throw ConfigError(field + ": matrix must be square");
        }
        if (i == 0) m.resize(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            if (!row[j].is_number()) {
                throw ConfigError(field + ": entries must be numbers");
            }
            const double v = row[j].get<double>();
            if (integer_entries && v != -1.0 && v != 0.0 && v != 1.0) {
                throw ConfigError(field + ": entries must be integers in {-1, 0, 1}");
            }
            m(i, j) = v;
        }
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ConfigError(field + ": matrix must be symmetric");
    }
    return m;
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing field '" + key + "'");
    return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

}  // namespace

TargetKind target_kind_from_string(const std::string& s) {
    if (s == "cat_even") return TargetKind::CatEven;
    if (s == "cat_odd") return TargetKind::CatOdd;
    if (s == "plus") return TargetKind::Plus;
    if (s == "ghz") return TargetKind::Ghz;
    if (s == "cccs") return TargetKind::Cccs;
    throw ConfigError("target.kind: unknown kind '" + s +
                      "' (expected cat_even|cat_odd|plus|ghz|cccs)");
}

const char* to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::CatEven: return "cat_even";
        case TargetKind::CatOdd: return "cat_odd";
        case TargetKind::Plus: return "plus";
        case TargetKind::Ghz: return "ghz";
        case TargetKind::Cccs: return "cccs";
    }
    return "?";
}

ExperimentConfig parse_config_text(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");

    ExperimentConfig cfg;

    const json& state = require(root, "state", "config");
    const bool has_ham = state.contains("hamiltonian");
    const bool has_cov = state.contains("covariance");
    if (has_ham == has_cov) {
        throw ConfigError("state: exactly one of 'hamiltonian' or 'covariance' is required");
    }
    if (has_ham) {
        const json& ham = state["hamiltonian"];
        cfg.g_matrix = parse_matrix(require(ham, "g_matrix", "state.hamiltonian"),
                                    "state.hamiltonian.g_matrix", true);
        cfg.r = require_number(ham, "r", "state.hamiltonian");
        if (!(cfg.r >= 0.0) || !std::isfinite(cfg.r)) {
            throw ConfigError("state.hamiltonian.r: must be >= 0");
        }
    } else {
        cfg.covariance = parse_matrix(require(state, "covariance", "state"),
                                      "state.covariance", false);
        if (cfg.covariance->rows() % 2 != 0) {
            throw ConfigError("state.covariance: must be 2N x 2N");
        }
    }

    const json& sub = require(root, "subtraction", "config");
    const json& tau = require(sub, "tau", "subtraction");
    if (tau.is_array()) {
        throw ConfigError("subtraction.tau: per-mode transmissivities are not supported; "
                          "one tau applies to every mode");
    }
    if (!tau.is_number()) throw ConfigError("subtraction.tau: expected a number");
    cfg.tau = tau.get<double>();
    if (!(cfg.tau > 0.0 && cfg.tau < 1.0)) {
        throw ConfigError("subtraction.tau: must lie strictly in (0, 1)");
    }
    const json& pat = require(sub, "pattern", "subtraction");
    if (!pat.is_array() || pat.empty()) {
        throw ConfigError("subtraction.pattern: expected a non-empty integer list");
    }
    for (const auto& v : pat) {
        if (!v.is_number_integer() || v.get<int>() < 0) {
            throw ConfigError("subtraction.pattern: entries must be integers >= 0");
        }
        cfg.pattern.push_back(v.get<int>());
    }

    const json& target = require(root, "target", "config");
    cfg.kind = target_kind_from_string(
        require(target, "kind", "target").get<std::string>());
    cfg.gamma_q = require_number(target, "gamma_q", "target");
    cfg.gamma_p = require_number(target, "gamma_p", "target");
    const json& modes = require(target, "modes", "target");
    if (!modes.is_number_integer() || modes.get<int>() < 1) {
        throw ConfigError("target.modes: expected a positive integer");
    }
    cfg.modes = modes.get<int>();
    if (target.contains("edges")) {
        const json& edges = target["edges"];
        if (!edges.is_array()) throw ConfigError("target.edges: expected an array of pairs");
        for (const auto& e : edges) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer()) {
                throw ConfigError("target.edges: each edge must be a pair of integers");
            }
            cfg.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }

    if (root.contains("sweep")) {
        const json& sweep = root["sweep"];
        SweepSpec s;
        s.variable = require(sweep, "variable", "sweep").get<std::string>();
        if (s.variable != "gamma_q" && s.variable != "gamma_p" && s.variable != "tau" &&
            s.variable != "r") {
            throw ConfigError("sweep.variable: expected gamma_q|gamma_p|tau|r");
        }
        s.from = require_number(sweep, "from", "sweep");
        s.to = require_number(sweep, "to", "sweep");
        const json& steps = require(sweep, "steps", "sweep");
        if (!steps.is_number_integer() || steps.get<int>() < 2) {
            throw ConfigError("sweep.steps: expected an integer >= 2");
        }
        s.steps = steps.get<int>();
        if (s.variable == "r" && !cfg.g_matrix) {
            throw ConfigError("sweep: sweeping r requires a hamiltonian state");
        }
        cfg.sweep = s;
    }

    if (root.contains("oracle")) {
        const json& oracle = root["oracle"];
        if (oracle.contains("enabled")) {
            if (!oracle["enabled"].is_boolean()) {
                throw ConfigError("oracle.enabled: expected a boolean");
            }
            cfg.oracle_enabled = oracle["enabled"].get<bool>();
        }
        if (oracle.contains("cutoff")) {
            if (!oracle["cutoff"].is_number_integer() || oracle["cutoff"].get<int>() < 4) {
                throw ConfigError("oracle.cutoff: expected an integer >= 4");
            }
            cfg.oracle_cutoff = oracle["cutoff"].get<int>();
        }
    }

    // cross-section consistency
    const int n = cfg.modes;
    if (static_cast<int>(cfg.pattern.size()) != n) {
        throw ConfigError("subtraction.pattern: length must equal target.modes");
    }
    if (cfg.g_matrix && cfg.g_matrix->rows() != n) {
        throw ConfigError("state.hamiltonian.g_matrix: dimension must equal target.modes");
    }
    if (cfg.covariance && cfg.covariance->rows() != 2 * n) {
        throw ConfigError("state.covariance: dimension must equal 2 * target.modes");
    }
    if (cfg.kind != TargetKind::Cccs && !cfg.edges.empty()) {
        throw ConfigError("target.edges: only valid for kind 'cccs'");
    }
    if ((cfg.kind == TargetKind::CatEven || cfg.kind == TargetKind::CatOdd ||
         cfg.kind == TargetKind::Plus) &&
        n != 1) {
        throw ConfigError("target.modes: cat and plus targets are single-mode");
    }
    if (cfg.oracle_enabled && !cfg.g_matrix) {
        throw ConfigError("oracle: requires a hamiltonian state section");
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace photsub
