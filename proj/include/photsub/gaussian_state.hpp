#ifndef PHOTSUB_GAUSSIAN_STATE_HPP
#define PHOTSUB_GAUSSIAN_STATE_HPP

#include <optional>

#include <Eigen/Dense>

#include "photsub/moment_engine.hpp"

namespace photsub {

/// Multimode squeezing generator: the quadratic Hamiltonian is parameterized
/// by a real symmetric coupling matrix g and a strength r >= 0.
struct Generator {
    Eigen::MatrixXd g;
    double r = 0.0;
};

/// Pure zero-mean N-mode Gaussian state.
///
/// Quadrature ordering is fixed module-wide as (q_1..q_N, p_1..p_N), hbar = 1,
/// so the vacuum covariance is I/2. The coherent-basis kernel B is the complex
/// symmetric matrix built from the blocks A, Delta, B of Gamma^{-1} with
/// Gamma = V + I/2.
class GaussianState {
public:
    /// State exp[(r/2) sum_ij g_ij (adag_i adag_j - a_i a_j)] |0>.
    /// The kernel is I/2 + Gtilde/2 with the nilpotent block matrix
    /// Gtilde = [[-tanh(g r), i tanh(g r)], [i tanh(g r), tanh(g r)]];
    /// tanh is evaluated through the symmetric eigendecomposition of g.
    /// The covariance follows from the symplectic action:
    /// V = diag(exp(2 r g), exp(-2 r g)) / 2, cross-checked against the
    /// kernel relation Gamma^{-1} = 2 Re(B).
    static GaussianState from_hamiltonian(const Eigen::MatrixXd& g, double r);

    /// State from a covariance matrix. Requires V symmetric, V + I/2 positive
    /// definite, and purity det(2V) = 1 within 1e-8 (the framework assumes
    /// pure states; impure inputs are rejected with a diagnostic).
    static GaussianState from_covariance(const Eigen::MatrixXd& cov);

    int n_modes() const { return n_modes_; }
    const Eigen::MatrixXd& cov() const { return cov_; }
    const Eigen::MatrixXd& gamma() const { return gamma_; }
    const Eigen::MatrixXcd& kernel() const { return kernel_; }
    const std::optional<Generator>& generator() const { return generator_; }

    /// 2 B - I; nilpotent for generator-built states.
    Eigen::MatrixXcd g_tilde() const;

    /// (2 pi)^N det(Gamma)^{1/4}.
    double normalization_prefactor() const;

    /// log det(Gamma); Gamma is symmetric positive definite.
    double log_det_gamma() const { return log_det_gamma_; }

private:
    GaussianState() = default;

    int n_modes_ = 0;
    Eigen::MatrixXd cov_;
    Eigen::MatrixXd gamma_;
    Eigen::MatrixXcd kernel_;
    double log_det_gamma_ = 0.0;
    std::optional<Generator> generator_;
};

/// Kernel from the blocks of Gamma^{-1} = [[A, Delta], [Delta^T, B]]:
///   B = 1/2 [[A + i(Delta + Delta^T)/2,  Delta - i(A - B)/2],
///            [Delta^T - i(A - B)/2,      B - i(Delta + Delta^T)/2]].
Eigen::MatrixXcd kernel_from_gamma_inverse(const Eigen::MatrixXd& gamma_inverse);

}  // namespace photsub

#endif
