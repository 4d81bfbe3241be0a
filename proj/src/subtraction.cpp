#include "photsub/subtraction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace photsub {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_state_pattern(const GaussianState& state, const std::vector<int>& pattern) {
    if (static_cast<int>(pattern.size()) != state.n_modes()) {
        throw std::invalid_argument("subtraction: pattern length must equal the mode count");
    }
}

}  // namespace

SubtractionSpec::SubtractionSpec(double tau_in, std::vector<int> pattern_in)
    : tau(tau_in), pattern(std::move(pattern_in)) {
    if (!std::isfinite(tau) || tau < 0.0 || tau >= 1.0) {
        throw std::invalid_argument("SubtractionSpec: tau must lie in [0, 1)");
    }
    if (pattern.empty()) {
        throw std::invalid_argument("SubtractionSpec: pattern must be non-empty");
    }
    for (int m : pattern) {
        if (m < 0) throw std::invalid_argument("SubtractionSpec: pattern entries must be >= 0");
    }
}

int SubtractionSpec::total_photons() const {
    int total = 0;
    for (int m : pattern) total += m;
    return total;
}

double SubtractionSpec::log_pattern_factorial() const {
    double out = 0.0;
    for (int m : pattern) out += std::lgamma(m + 1.0);
    return out;
}

Eigen::VectorXcd apply_x_transpose(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size() / 2;
    const Complex i(0.0, 1.0);
    Eigen::VectorXcd out(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex w = v[j] - i * v[n + j];  // q_j - i p_j
        out[j] = w;
        out[n + j] = i * w;
    }
    return out;
}

MomentProblem make_overlap_problem(const GaussianState& state, double tau,
                                   const std::vector<int>& pattern,
                                   const Eigen::VectorXd& x_gamma) {
    check_state_pattern(state, pattern);
    const int n = state.n_modes();
    if (x_gamma.size() != 2 * n) {
        throw std::invalid_argument("subtraction: amplitude vector must have length 2N");
    }
    if (!x_gamma.allFinite()) {
        throw std::invalid_argument("subtraction: amplitude vector has non-finite entries");
    }

    MomentProblem p;
    p.kernel = state.kernel() + 0.5 * Eigen::MatrixXcd::Identity(2 * n, 2 * n);
    p.linear = (std::sqrt(tau) / 2.0) * apply_x_transpose(x_gamma);
    const Complex i(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        if (pattern[j] == 0) continue;
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(2 * n);
        u[j] = 1.0;
        u[n + j] = i;
        p.monomials.push_back({u, pattern[j]});
    }
    return p;
}

MomentProblem make_norm_problem(const GaussianState& state, double tau,
                                const std::vector<int>& pattern) {
    check_state_pattern(state, pattern);
    const int n = state.n_modes();
    const Complex i(0.0, 1.0);

    Eigen::MatrixXcd x(2 * n, 2 * n);
    x.setZero();
    x.topLeftCorner(n, n).setIdentity();
    x.bottomRightCorner(n, n).setIdentity();
    x.topRightCorner(n, n) = i * Eigen::MatrixXcd::Identity(n, n);
    x.bottomLeftCorner(n, n) = -i * Eigen::MatrixXcd::Identity(n, n);

    const Eigen::MatrixXcd half = state.kernel() +
                                  0.5 * Eigen::MatrixXcd::Identity(2 * n, 2 * n);

    MomentProblem p;
    p.kernel.setZero(4 * n, 4 * n);
    p.kernel.topLeftCorner(2 * n, 2 * n) = half;
    p.kernel.bottomRightCorner(2 * n, 2 * n) = half.conjugate();
    p.kernel.topRightCorner(2 * n, 2 * n) = -(tau / 2.0) * x.transpose();
    p.kernel.bottomLeftCorner(2 * n, 2 * n) = -(tau / 2.0) * x;
    p.linear = Eigen::VectorXcd::Zero(4 * n);

    for (int j = 0; j < n; ++j) {
        if (pattern[j] == 0) continue;
        Eigen::VectorXcd ua = Eigen::VectorXcd::Zero(4 * n);
        ua[j] = 1.0;
        ua[n + j] = i;
        p.monomials.push_back({ua, pattern[j]});
        Eigen::VectorXcd ub = Eigen::VectorXcd::Zero(4 * n);
        ub[2 * n + j] = 1.0;
        ub[3 * n + j] = -i;
        p.monomials.push_back({ub, pattern[j]});
    }
    return p;
}

MomentResult integral_I(const GaussianState& state, const SubtractionSpec& spec,
                        const Eigen::VectorXd& x_gamma) {
    return moment(make_overlap_problem(state, spec.tau, spec.pattern, x_gamma));
}

MomentResult integral_J(const GaussianState& state, const SubtractionSpec& spec) {
    MomentResult j = moment(make_norm_problem(state, spec.tau, spec.pattern));
    if (j.is_zero()) return j;
    const double resid = std::abs(j.value.imag()) / std::abs(j.value);
    if (resid > 1e-10) {
        std::ostringstream msg;
        msg << "integral_J: imaginary residue " << resid
            << " exceeds 1e-10; kernel assembly inconsistent";
        throw std::runtime_error(msg.str());
    }
    if (j.value.real() < 0.0) {
        if (std::abs(j.value.real()) > 1e-10) {
            throw std::runtime_error("integral_J: negative norm integral");
        }
        return MomentResult{};
    }
    j.value = Complex(j.value.real(), 0.0);
    return j;
}

double success_probability(const GaussianState& state, const SubtractionSpec& spec) {
    const MomentResult j = integral_J(state, spec);
    if (j.is_zero()) return 0.0;

    const int n = state.n_modes();
    const int m = spec.total_photons();
    const double log_p = m * std::log1p(-spec.tau) - m * std::log(2.0) -
                         spec.log_pattern_factorial() -
                         2.0 * n * std::log(2.0 * kPi) -
                         0.5 * state.log_det_gamma() + j.log_abs();
    const double p = std::exp(log_p);
    if (!(p >= -1e-8 && p <= 1.0 + 1e-8)) {
        std::ostringstream msg;
        msg << "success_probability: value " << p
            << " outside [0, 1]; kernel or prefactor inconsistency";
        throw std::runtime_error(msg.str());
    }
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace photsub
