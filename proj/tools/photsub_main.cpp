#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "photsub/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParseError = 1;
constexpr int kExitNumericalFailure = 2;
constexpr int kExitOracleDisagreement = 3;

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << out_path << "'\n";
        return kExitNumericalFailure;
    }
    out << text;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fidelities, success probabilities, and analytic bounds for "
                 "multiphoton subtraction from multimode Gaussian states"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    bool force_oracle = false;
    int threads = 1;
    int max_total = 4;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "experiment config (JSON)");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->add_flag("--oracle", force_oracle, "force the Fock-oracle column");
        cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    };

    CLI::App* cmd_fidelity = app.add_subcommand("fidelity", "single-point fidelity report");
    add_common(cmd_fidelity, true);
    CLI::App* cmd_bound = app.add_subcommand("bound", "analytic bounds only (no integrals)");
    add_common(cmd_bound, true);
    CLI::App* cmd_prob = app.add_subcommand("prob", "heralding probability table");
    add_common(cmd_prob, true);
    cmd_prob->add_option("--max-total", max_total, "total-photon cap for the table")
        ->check(CLI::NonNegativeNumber);
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "parameter sweep from the config");
    add_common(cmd_sweep, true);
    CLI::App* cmd_oracle = app.add_subcommand(
        "oracle-check", "moment-engine vs Fock-oracle comparison on a built-in grid");
    add_common(cmd_oracle, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParseError;
    }

    try {
        if (cmd_oracle->parsed()) {
            const photsub::OracleCheckResult res =
                photsub::oracle_check_default_grid(threads);
            std::ostringstream report;
            report << "tuples: " << res.tuples
                   << "\nmax |F_kernel - F_fock|: " << photsub::format_double(res.max_fidelity_gap)
                   << "\nmax |P_kernel - P_fock|: " << photsub::format_double(res.max_probability_gap)
                   << "\nresult: " << (res.ok() ? "agree" : "DISAGREE")
                   << " (tolerance 1e-06)\n";
            const int rc = write_output(report.str(), out_path);
            if (rc != kExitOk) return rc;
            return res.ok() ? kExitOk : kExitOracleDisagreement;
        }

        photsub::ExperimentConfig cfg = photsub::parse_config_file(config_path);
        if (force_oracle) {
            if (!cfg.g_matrix) {
                std::cerr << "error: --oracle requires a hamiltonian state section\n";
                return kExitParseError;
            }
            cfg.oracle_enabled = true;
        }

        std::vector<photsub::ResultRow> rows;
        if (cmd_fidelity->parsed()) {
            cfg.sweep.reset();  // single point
            rows = photsub::run(cfg, threads);
        } else if (cmd_bound->parsed()) {
            rows = photsub::run_bounds(cfg);
        } else if (cmd_prob->parsed()) {
            rows = photsub::run_probabilities(cfg, max_total);
        } else {
            if (!cfg.sweep) {
                std::cerr << "error: sweep subcommand requires a sweep section\n";
                return kExitParseError;
            }
            rows = photsub::run(cfg, threads);
        }
        return write_output(photsub::render_csv(rows), out_path);
    } catch (const photsub::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
}
