#include "photsub/fidelity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace photsub {

namespace {

Eigen::VectorXd unsigned_amplitude(int n_modes, double gamma_q, double gamma_p) {
    Eigen::VectorXd x(2 * n_modes);
    x.head(n_modes).setConstant(gamma_q);
    x.tail(n_modes).setConstant(gamma_p);
    return x;
}

}  // namespace

FidelityReport fidelity_exact(const GaussianState& state, const SubtractionSpec& spec,
                              const BinaryPhaseTarget& target) {
    if (target.n_modes() != state.n_modes()) {
        throw std::invalid_argument("fidelity_exact: target and state mode counts differ");
    }

    FidelityReport rep;
    rep.parity = parity_class(target, spec.pattern);
    rep.phase_factor = std::norm(target.phase_sum(spec.pattern));
    const double decay = std::exp(
        -0.5 * state.n_modes() *
        (target.gamma_q() * target.gamma_q() + target.gamma_p() * target.gamma_p()));
    rep.bound_general = rep.phase_factor * decay;
    if (rep.parity != ParityClass::Mixed) {
        rep.bound_vacuum = target.vacuum_overlap();
    }

    const MomentResult j = integral_J(state, spec);
    rep.norm_integral = j.to_complex().real();
    if (j.is_zero()) {
        rep.defined = false;
        rep.probability = 0.0;
        rep.fidelity = std::numeric_limits<double>::quiet_NaN();
        rep.ratio = std::numeric_limits<double>::quiet_NaN();
        rep.abs_i_sq = 0.0;
        return rep;
    }
    rep.defined = true;
    rep.probability = success_probability(state, spec);

    const MomentResult i_unsigned = integral_I(
        state, spec,
        unsigned_amplitude(state.n_modes(), target.gamma_q(), target.gamma_p()));
    rep.abs_i_sq = i_unsigned.is_zero()
                       ? 0.0
                       : std::exp(2.0 * i_unsigned.log_abs());
    rep.ratio = i_unsigned.is_zero()
                    ? 0.0
                    : std::exp(2.0 * i_unsigned.log_abs() - j.log_abs());

    std::vector<std::pair<Complex, MomentResult>> amp_terms;
    amp_terms.reserve(target.terms().size());
    for (const auto& term : target.terms()) {
        amp_terms.emplace_back(std::conj(term.coeff),
                               integral_I(state, spec, target.signed_amplitude(term)));
    }
    const MomentResult amp = scaled_sum(amp_terms);
    rep.fidelity = amp.is_zero()
                       ? 0.0
                       : decay * std::exp(2.0 * amp.log_abs() - j.log_abs());
    return rep;
}

double ratio_R(const GaussianState& state, const SubtractionSpec& spec,
               double gamma_q, double gamma_p) {
    if (spec.tau == 0.0) return 1.0;  // overlap and norm integrals coincide
    const MomentResult j = integral_J(state, spec);
    if (j.is_zero()) {
        throw std::runtime_error("ratio_R: zero-probability pattern, R undefined");
    }
    const MomentResult i = integral_I(
        state, spec, unsigned_amplitude(state.n_modes(), gamma_q, gamma_p));
    if (i.is_zero()) return 0.0;
    return std::exp(2.0 * i.log_abs() - j.log_abs());
}

double bound_general(const BinaryPhaseTarget& target, const std::vector<int>& pattern) {
    const double decay = std::exp(
        -0.5 * target.n_modes() *
        (target.gamma_q() * target.gamma_q() + target.gamma_p() * target.gamma_p()));
    return std::norm(target.phase_sum(pattern)) * decay;
}

double bound_vacuum(const BinaryPhaseTarget& target) { return target.vacuum_overlap(); }

FnCertificate f_n(const Eigen::MatrixXd& g, double r) {
    if (g.rows() == 0 || g.rows() != g.cols() || !g.allFinite()) {
        throw std::invalid_argument("f_n: coupling matrix must be square and finite");
    }
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("f_n: coupling matrix must be symmetric");
    }
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("f_n: squeezing strength must be >= 0");
    }
    const Eigen::Index n = g.rows();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd w = es.eigenvectors().transpose() * ones;

    FnCertificate cert;
    double f = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        f += w[k] * w[k] * std::tanh(es.eigenvalues()[k] * r);
    }
    cert.value = f;

    bool cluster = true;
    for (Eigen::Index i = 0; i < n && cluster; ++i) {
        for (Eigen::Index j = 0; j < n && cluster; ++j) {
            const double e = g(i, j);
            if (i == j) {
                cluster = e == 0.0;
            } else {
                cluster = e == -1.0 || e == 0.0 || e == 1.0;
            }
        }
    }
    cert.cluster_class = cluster;
    cert.cluster_bound = n * std::tanh((n - 1) * r);
    cert.within_bound =
        std::abs(f) <= cert.cluster_bound + 1e-12 * std::max(1.0, cert.cluster_bound);

    const Eigen::MatrixXd sq = g * g;
    cert.self_inverse =
        (sq - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10;
    if (cert.self_inverse) {
        cert.self_inverse_value = ones.dot(g * ones) * std::tanh(r);
    }
    return cert;
}

double amplitude_bound(AmplitudeBoundKind kind, int n_modes, double tau, double f,
                       double gamma_q, double gamma_p) {
    if (n_modes < 1) throw std::invalid_argument("amplitude_bound: need at least one mode");
    const double q2 = gamma_q * gamma_q;
    const double p2 = gamma_p * gamma_p;
    const double expo = std::exp(-0.5 * (n_modes - f * tau) * q2 -
                                 0.5 * (n_modes + f * tau) * p2);
    switch (kind) {
        case AmplitudeBoundKind::Cccs:
            return expo / std::pow(1.0 + std::exp(-q2 - p2), n_modes);
        case AmplitudeBoundKind::Ghz:
            return 2.0 * expo / (1.0 + std::exp(-n_modes * (q2 + p2)));
    }
    throw std::logic_error("amplitude_bound: unknown kind");
}

double closed_form_F2(double r, double tau, double gamma_q, double gamma_p) {
    const double q2 = gamma_q * gamma_q;
    const double p2 = gamma_p * gamma_p;
    const double th = std::tanh(r);
    const double num = std::exp(-0.5 * q2 * (1.0 - tau * th) - 0.5 * p2 * (1.0 + tau * th)) *
                       (q2 + p2) *
                       std::pow(1.0 + tau * tau + (1.0 - tau * tau) * std::cosh(2.0 * r), 1.5);
    const double den = 2.0 * std::sqrt(2.0) * std::pow(std::cosh(r), 3) *
                       (1.0 - std::exp(-q2 - p2));
    return num / den;
}

double closed_form_F3(double r, double tau, double gamma_q, double gamma_p) {
    const double q2 = gamma_q * gamma_q;
    const double p2 = gamma_p * gamma_p;
    const double th = std::tanh(r);
    return std::exp(-0.5 * (1.0 - tau * th) * q2 - 0.5 * (1.0 + tau * th) * p2) *
           (q2 + p2) / (1.0 - std::exp(-q2 - p2)) *
           std::pow((1.0 - tau * tau) * std::cosh(2.0 * r) + tau * tau + 1.0, 1.5) /
           (4.0 * std::sqrt(2.0) * std::pow(std::cosh(r), 3));
}

}  // namespace photsub
