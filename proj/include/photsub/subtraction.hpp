#ifndef PHOTSUB_SUBTRACTION_HPP
#define PHOTSUB_SUBTRACTION_HPP

#include <vector>

#include "photsub/gaussian_state.hpp"
#include "photsub/moment_engine.hpp"

namespace photsub {

/// Beamsplitter transmissivity and PNR pattern for multimode subtraction.
/// One tau for every mode; per-mode transmissivities are rejected at the
/// config layer. tau = 0 is accepted as the analytic no-tap limit used by the
/// ratio R; experiment configs require 0 < tau < 1.
struct SubtractionSpec {
    double tau;
    std::vector<int> pattern;

    SubtractionSpec(double tau_in, std::vector<int> pattern_in);

    int n_modes() const { return static_cast<int>(pattern.size()); }
    int total_photons() const;
    double log_pattern_factorial() const;
};

/// X^T v for the constant coupling matrix X = [[I, iI], [-iI, I]] and a real
/// 2N amplitude vector (q entries then p entries).
Eigen::VectorXcd apply_x_transpose(const Eigen::VectorXd& v);

/// Moment problem for the overlap integral: kernel B + I/2, linear term
/// (sqrt(tau)/2) X^T x_gamma, directions (e_qj + i e_pj)^{m_j}. The amplitude
/// vector may carry per-mode signs.
MomentProblem make_overlap_problem(const GaussianState& state, double tau,
                                   const std::vector<int>& pattern,
                                   const Eigen::VectorXd& x_gamma);

/// Moment problem for the norm integral over (x_alpha, x_beta): block kernel
/// diag(B + I/2, conj(B) + I/2) with the -(tau/2) X coupling folded into the
/// off-diagonal blocks, zero linear term, conjugated directions on the beta
/// copy.
MomentProblem make_norm_problem(const GaussianState& state, double tau,
                                const std::vector<int>& pattern);

MomentResult integral_I(const GaussianState& state, const SubtractionSpec& spec,
                        const Eigen::VectorXd& x_gamma);

/// Real positive within a 1e-10 relative imaginary residue; a larger residue
/// or a negative value flags kernel assembly inconsistency.
MomentResult integral_J(const GaussianState& state, const SubtractionSpec& spec);

/// P(pattern) = (1-tau)^M / (2^M m! (2pi)^{2N} sqrt(det Gamma)) * J.
double success_probability(const GaussianState& state, const SubtractionSpec& spec);

}  // namespace photsub

#endif
