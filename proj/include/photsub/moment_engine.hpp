#ifndef PHOTSUB_MOMENT_ENGINE_HPP
#define PHOTSUB_MOMENT_ENGINE_HPP

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace photsub {

using Complex = std::complex<double>;

/// One polynomial factor (u^T x)^power multiplying a Gaussian integrand.
struct Monomial {
    Eigen::VectorXcd direction;
    int power = 1;
};

/// Normal form of the integrals evaluated by this engine:
///
///   integral over x in R^n of  exp(-x^T M x / 2 + b^T x) * prod_j (u_j^T x)^{m_j}
///
/// with n even, M complex symmetric and Re(M) positive definite (convergence).
struct MomentProblem {
    Eigen::MatrixXcd kernel;            // M, n x n
    Eigen::VectorXcd linear;            // b, length n
    std::vector<Monomial> monomials;

    int dim() const { return static_cast<int>(kernel.rows()); }
    int total_power() const;
    void validate() const;
};

/// Result carried as value * exp(log_scale) so determinant/exponential factors
/// for many modes cannot overflow a double.
struct MomentResult {
    Complex value{0.0, 0.0};
    double log_scale = 0.0;

    Complex to_complex() const;
    /// log |value * exp(log_scale)|; -inf for an exact zero.
    double log_abs() const;
    bool is_zero() const { return value == Complex(0.0, 0.0); }
};

/// sum_k coeff_k * result_k, renormalized against the dominant scale.
MomentResult scaled_sum(const std::vector<std::pair<Complex, MomentResult>>& terms);

/// (2 pi)^{n/2} det(M)^{-1/2} exp(b^T M^{-1} b / 2).
///
/// det^{-1/2} is taken on the principal branch: the complex log-determinant is
/// accumulated per eigenvalue, each of which has positive real part because
/// Re(M) is positive definite. Throws std::domain_error otherwise.
MomentResult base_integral(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& b);

/// Full integral with polynomial factors. Fast path: base_integral times the
/// sum over pairings-with-loops, a pair (i,j) contributing u_i^T M^{-1} u_j and
/// a loop on i contributing u_i^T M^{-1} b. Exact zero when the total power is
/// odd and b = 0.
MomentResult moment(const MomentProblem& problem);

/// Independent slow path: expands exp(b^T M^{-1} b / 2) with b shifted by the
/// monomial directions as a truncated multivariate polynomial and reads off
/// the derivative coefficient. Same contract as moment(); exponential cost in
/// the total power.
MomentResult moment_reference(const MomentProblem& problem);

}  // namespace photsub

#endif
