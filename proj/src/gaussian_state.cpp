#include "photsub/gaussian_state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace photsub {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_real_symmetric(const Eigen::MatrixXd& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument(std::string(what) + ": matrix must be symmetric");
    }
}

}  // namespace

Eigen::MatrixXcd kernel_from_gamma_inverse(const Eigen::MatrixXd& gamma_inverse) {
    const Eigen::Index n = gamma_inverse.rows() / 2;
    const Eigen::MatrixXd a = gamma_inverse.topLeftCorner(n, n);
    const Eigen::MatrixXd delta = gamma_inverse.topRightCorner(n, n);
    const Eigen::MatrixXd b = gamma_inverse.bottomRightCorner(n, n);

    const Complex i(0.0, 1.0);
    const Eigen::MatrixXd delta_sym = delta + delta.transpose();
    const Eigen::MatrixXd ab = a - b;

    Eigen::MatrixXcd kernel(2 * n, 2 * n);
    kernel.topLeftCorner(n, n) = a.cast<Complex>() + (i / 2.0) * delta_sym.cast<Complex>();
    kernel.topRightCorner(n, n) = delta.cast<Complex>() - (i / 2.0) * ab.cast<Complex>();
    kernel.bottomLeftCorner(n, n) =
        delta.transpose().cast<Complex>() - (i / 2.0) * ab.cast<Complex>();
    kernel.bottomRightCorner(n, n) = b.cast<Complex>() - (i / 2.0) * delta_sym.cast<Complex>();
    return 0.5 * kernel;
}

GaussianState GaussianState::from_hamiltonian(const Eigen::MatrixXd& g, double r) {
    require_real_symmetric(g, "from_hamiltonian");
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("from_hamiltonian: squeezing strength must be >= 0");
    }
    const Eigen::Index n = g.rows();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("from_hamiltonian: eigendecomposition failed");
    }
    const Eigen::MatrixXd& q = es.eigenvectors();
    const Eigen::VectorXd lam = es.eigenvalues();

    Eigen::VectorXd tanh_l(n), exp_p(n), exp_m(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        tanh_l[k] = std::tanh(lam[k] * r);
        exp_p[k] = std::exp(2.0 * lam[k] * r);
        exp_m[k] = std::exp(-2.0 * lam[k] * r);
    }
    const Eigen::MatrixXd t = q * tanh_l.asDiagonal() * q.transpose();

    GaussianState state;
    state.n_modes_ = static_cast<int>(n);
    state.generator_ = Generator{g, r};

    state.cov_.setZero(2 * n, 2 * n);
    state.cov_.topLeftCorner(n, n) = 0.5 * (q * exp_p.asDiagonal() * q.transpose());
    state.cov_.bottomRightCorner(n, n) = 0.5 * (q * exp_m.asDiagonal() * q.transpose());
    state.gamma_ = state.cov_ + 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);

    const Complex i(0.0, 1.0);
    Eigen::MatrixXcd gt(2 * n, 2 * n);
    gt.topLeftCorner(n, n) = -t.cast<Complex>();
    gt.topRightCorner(n, n) = i * t.cast<Complex>();
    gt.bottomLeftCorner(n, n) = i * t.cast<Complex>();
    gt.bottomRightCorner(n, n) = t.cast<Complex>();
    state.kernel_ =
        0.5 * Eigen::MatrixXcd::Identity(2 * n, 2 * n) + 0.5 * gt;

    // Gamma^{-1} = 2 Re(B); the symplectic route above must agree with the
    // kernel route or the construction is inconsistent.
    const Eigen::MatrixXd gamma_inv_from_kernel = 2.0 * state.kernel_.real();
    const Eigen::MatrixXd residual =
        state.gamma_ * gamma_inv_from_kernel - Eigen::MatrixXd::Identity(2 * n, 2 * n);
    if (residual.cwiseAbs().maxCoeff() > 1e-9) {
        throw std::runtime_error("from_hamiltonian: covariance/kernel cross-check failed");
    }

    // log det Gamma from the eigenvalues of g:
    // Gamma = diag((exp(2rg)+I)/2, (exp(-2rg)+I)/2).
    double log_det = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        log_det += std::log(0.5 * (exp_p[k] + 1.0)) + std::log(0.5 * (exp_m[k] + 1.0));
    }
    state.log_det_gamma_ = log_det;
    return state;
}

GaussianState GaussianState::from_covariance(const Eigen::MatrixXd& cov) {
    require_real_symmetric(cov, "from_covariance");
    const Eigen::Index dim = cov.rows();
    if (dim % 2 != 0) {
        throw std::invalid_argument("from_covariance: covariance must be 2N x 2N");
    }
    const Eigen::Index n = dim / 2;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("from_covariance: eigendecomposition failed");
    }
    double log_det_2v = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double v = es.eigenvalues()[k];
        if (v <= 0.0) {
            throw std::invalid_argument(
                "from_covariance: covariance is not positive definite; "
                "not a valid pure-state covariance");
        }
        log_det_2v += std::log(2.0 * v);
    }
    const double purity_err = std::abs(std::expm1(log_det_2v));
    if (purity_err > 1e-8) {
        std::ostringstream msg;
        msg << "from_covariance: state is not pure; det(2V) = "
            << std::exp(log_det_2v) << " deviates from 1 by " << purity_err
            << " (tolerance 1e-8)";
        throw std::invalid_argument(msg.str());
    }

    GaussianState state;
    state.n_modes_ = static_cast<int>(n);
    state.cov_ = cov;
    state.gamma_ = cov + 0.5 * Eigen::MatrixXd::Identity(dim, dim);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esg(state.gamma_);
    if (esg.info() != Eigen::Success || esg.eigenvalues().minCoeff() <= 0.0) {
        throw std::invalid_argument("from_covariance: Gamma = V + I/2 is not positive definite");
    }
    double log_det = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) log_det += std::log(esg.eigenvalues()[k]);
    state.log_det_gamma_ = log_det;

    const Eigen::MatrixXd gamma_inv = esg.eigenvectors() *
                                      esg.eigenvalues().cwiseInverse().asDiagonal() *
                                      esg.eigenvectors().transpose();
    state.kernel_ = kernel_from_gamma_inverse(gamma_inv);
    return state;
}

Eigen::MatrixXcd GaussianState::g_tilde() const {
    return 2.0 * kernel_ -
           Eigen::MatrixXcd::Identity(kernel_.rows(), kernel_.cols());
}

double GaussianState::normalization_prefactor() const {
    return std::exp(n_modes_ * std::log(2.0 * kPi) + 0.25 * log_det_gamma_);
}

}  // namespace photsub
