#include "photsub/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

namespace photsub {

namespace {

struct PointParams {
    double gamma_q;
    double gamma_p;
    double tau;
    double r;
};

PointParams point_params(const ExperimentConfig& cfg, double sweep_value) {
    PointParams p{cfg.gamma_q, cfg.gamma_p, cfg.tau, cfg.r};
    if (cfg.sweep) {
        const std::string& var = cfg.sweep->variable;
        if (var == "gamma_q") p.gamma_q = sweep_value;
        else if (var == "gamma_p") p.gamma_p = sweep_value;
        else if (var == "tau") p.tau = sweep_value;
        else p.r = sweep_value;
    }
    return p;
}

std::vector<double> sweep_values(const ExperimentConfig& cfg) {
    if (!cfg.sweep) return {0.0};
    std::vector<double> vals(cfg.sweep->steps);
    const double step = (cfg.sweep->to - cfg.sweep->from) / (cfg.sweep->steps - 1);
    for (int i = 0; i < cfg.sweep->steps; ++i) vals[i] = cfg.sweep->from + i * step;
    return vals;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::string pattern_string(const std::vector<int>& pattern) {
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(pattern[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string render_csv(const std::vector<ResultRow>& rows) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    auto put = [&](const std::optional<double>& v, bool last = false) {
        if (v) out << format_double(*v);
        if (!last) out << ',';
    };
    for (const auto& row : rows) {
        out << row.sweep_value << ',';
        put(row.fidelity);
        put(row.ratio);
        put(row.probability);
        put(row.bound_general);
        put(row.bound_vacuum);
        if (row.parity) out << *row.parity;
        out << ',';
        put(row.oracle_fidelity);
        put(row.norm_deficit, /*last=*/true);
        out << '\n';
    }
    return out.str();
}

GaussianState build_state(const ExperimentConfig& cfg, double r_override) {
    if (cfg.g_matrix) return GaussianState::from_hamiltonian(*cfg.g_matrix, r_override);
    return GaussianState::from_covariance(*cfg.covariance);
}

BinaryPhaseTarget build_target(const ExperimentConfig& cfg, double gamma_q, double gamma_p) {
    switch (cfg.kind) {
        case TargetKind::CatEven: return BinaryPhaseTarget::cat_even(gamma_q, gamma_p);
        case TargetKind::CatOdd: return BinaryPhaseTarget::cat_odd(gamma_q, gamma_p);
        case TargetKind::Plus: return BinaryPhaseTarget::plus_state(gamma_q, gamma_p);
        case TargetKind::Ghz: return BinaryPhaseTarget::ghz(cfg.modes, gamma_q, gamma_p);
        case TargetKind::Cccs:
            return BinaryPhaseTarget::cccs(cfg.modes, cfg.edges, gamma_q, gamma_p);
    }
    throw std::logic_error("build_target: unknown kind");
}

std::vector<ResultRow> run(const ExperimentConfig& cfg, int threads) {
    const std::vector<double> values = sweep_values(cfg);
    std::vector<ResultRow> rows(values.size());
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    parallel_for(static_cast<int>(values.size()), threads, [&](int i) {
        if (failed.load()) return;
        try {
            const PointParams p = point_params(cfg, values[i]);
            ResultRow row;
            row.sweep_value = cfg.sweep ? format_double(values[i]) : "";

            const GaussianState state = build_state(cfg, p.r);
            const BinaryPhaseTarget target = build_target(cfg, p.gamma_q, p.gamma_p);
            const SubtractionSpec spec(p.tau, cfg.pattern);
            const FidelityReport rep = fidelity_exact(state, spec, target);

            row.probability = rep.probability;
            row.bound_general = rep.bound_general;
            if (rep.bound_vacuum) row.bound_vacuum = *rep.bound_vacuum;
            row.parity = to_string(rep.parity);
            if (rep.defined) {
                row.fidelity = rep.fidelity;
                row.ratio = rep.ratio;
            }

            if (cfg.oracle_enabled) {
                const FockTensor psi = gaussian_to_fock(*cfg.g_matrix, p.r,
                                                        cfg.oracle_cutoff,
                                                        /*strict=*/false);
                row.norm_deficit = psi.norm_deficit;
                const SubtractionResult sub = subtract_fock(psi, p.tau, cfg.pattern);
                if (!sub.zero_probability) {
                    row.oracle_fidelity = fidelity_fock(sub.heralded, target);
                }
            }
            rows[i] = std::move(row);
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    });
    if (failed.load()) std::rethrow_exception(failure);
    return rows;
}

std::vector<ResultRow> run_bounds(const ExperimentConfig& cfg) {
    const std::vector<double> values = sweep_values(cfg);
    std::vector<ResultRow> rows(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const PointParams p = point_params(cfg, values[i]);
        const BinaryPhaseTarget target = build_target(cfg, p.gamma_q, p.gamma_p);
        ResultRow row;
        row.sweep_value = cfg.sweep ? format_double(values[i]) : "";
        row.bound_general = bound_general(target, cfg.pattern);
        const ParityClass parity = parity_class(target, cfg.pattern);
        row.parity = to_string(parity);
        if (parity != ParityClass::Mixed) row.bound_vacuum = bound_vacuum(target);
        rows[i] = std::move(row);
    }
    return rows;
}

std::vector<ResultRow> run_probabilities(const ExperimentConfig& cfg, int max_total) {
    if (max_total < 0) throw ConfigError("prob: photon cap must be >= 0");
    const GaussianState state = build_state(cfg, cfg.r);
    const int n = cfg.modes;

    std::vector<ResultRow> rows;
    std::vector<int> pattern(n, 0);
    // enumerate all patterns with total <= max_total in lexicographic order
    while (true) {
        const SubtractionSpec spec(cfg.tau, pattern);
        const double p = success_probability(state, spec);
        if (p > 1e-12) {
            ResultRow row;
            row.sweep_value = pattern_string(pattern);
            row.probability = p;
            rows.push_back(std::move(row));
        }
        int total = 0;
        for (int m : pattern) total += m;
        int k = n - 1;
        for (; k >= 0; --k) {
            if (total < max_total) {
                ++pattern[k];
                break;
            }
            total -= pattern[k];
            pattern[k] = 0;
        }
        if (k < 0) break;
    }
    return rows;
}

OracleCheckResult oracle_check_default_grid(int threads, int cutoff) {
    struct Tuple {
        Eigen::MatrixXd g;
        double r;
        double tau;
        std::vector<int> pattern;
        int target;  // 0 cat_even, 1 cat_odd, 2 plus, 3 ghz, 4 cccs
        double gamma_q;
        double gamma_p;
    };

    std::vector<Tuple> tuples;
    {
        Eigen::MatrixXd vac(1, 1), smsv(1, 1), tmsv(2, 2), mixed(2, 2);
        vac << 0.0;
        smsv << 1.0;
        tmsv << 0.0, 1.0, 1.0, 0.0;
        mixed << 1.0, 1.0, 1.0, 0.0;
        const std::vector<std::pair<Eigen::MatrixXd, double>> states1 = {
            {vac, 0.5}, {smsv, 0.5}, {smsv, 1.0}};
        const std::vector<std::pair<Eigen::MatrixXd, double>> states2 = {
            {tmsv, 0.3}, {tmsv, 0.8}, {mixed, 0.6}};
        const std::vector<std::pair<double, double>> gammas = {{0.3, 0.0}, {0.5, 0.2}};
        for (const auto& [g, r] : states1) {
            for (double tau : {0.02, 0.1}) {
                for (int m : {0, 1, 2, 3}) {
                    for (int target : {0, 1, 2}) {
                        for (auto [q, p] : gammas) {
                            tuples.push_back({g, r, tau, {m}, target, q, p});
                        }
                    }
                }
            }
        }
        for (const auto& [g, r] : states2) {
            for (double tau : {0.02, 0.1}) {
                for (std::vector<int> m :
                     {std::vector<int>{0, 0}, {1, 0}, {1, 1}, {2, 1}}) {
                    for (int target : {3, 4}) {
                        for (auto [q, p] : gammas) {
                            tuples.push_back({g, r, tau, m, target, q, p});
                        }
                    }
                }
            }
        }
    }

    std::vector<double> f_gap(tuples.size(), 0.0), p_gap(tuples.size(), 0.0);
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    parallel_for(static_cast<int>(tuples.size()), threads, [&](int i) {
        if (failed.load()) return;
        try {
            const Tuple& t = tuples[i];
            const GaussianState state = GaussianState::from_hamiltonian(t.g, t.r);
            const SubtractionSpec spec(t.tau, t.pattern);
            BinaryPhaseTarget target = [&] {
                switch (t.target) {
                    case 0: return BinaryPhaseTarget::cat_even(t.gamma_q, t.gamma_p);
                    case 1: return BinaryPhaseTarget::cat_odd(t.gamma_q, t.gamma_p);
                    case 2: return BinaryPhaseTarget::plus_state(t.gamma_q, t.gamma_p);
                    case 3: return BinaryPhaseTarget::ghz(2, t.gamma_q, t.gamma_p);
                    default:
                        return BinaryPhaseTarget::cccs(2, {{0, 1}}, t.gamma_q, t.gamma_p);
                }
            }();

            const FidelityReport rep = fidelity_exact(state, spec, target);
            const FockTensor psi = gaussian_to_fock(t.g, t.r, cutoff);
            const SubtractionResult sub = subtract_fock(psi, t.tau, t.pattern);
            p_gap[i] = std::abs(rep.probability - sub.probability);
            if (rep.defined && !sub.zero_probability && rep.probability > 1e-12) {
                f_gap[i] = std::abs(rep.fidelity - fidelity_fock(sub.heralded, target));
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    });
    if (failed.load()) std::rethrow_exception(failure);

    OracleCheckResult out;
    out.tuples = static_cast<int>(tuples.size());
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        out.max_fidelity_gap = std::max(out.max_fidelity_gap, f_gap[i]);
        out.max_probability_gap = std::max(out.max_probability_gap, p_gap[i]);
    }
    return out;
}

}  // namespace photsub
