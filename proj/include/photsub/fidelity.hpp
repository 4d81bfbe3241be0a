#ifndef PHOTSUB_FIDELITY_HPP
#define PHOTSUB_FIDELITY_HPP

#include <optional>

#include "photsub/gaussian_state.hpp"
#include "photsub/subtraction.hpp"
#include "photsub/targets.hpp"

namespace photsub {

struct FidelityReport {
    /// False when the pattern has zero probability (J = 0); fidelity is NaN
    /// then, probability 0.
    bool defined = false;
    double fidelity = 0.0;
    /// R = |I|^2 / J with the unsigned amplitude vector.
    double ratio = 0.0;
    double abs_i_sq = 0.0;
    double norm_integral = 0.0;  // J
    double probability = 0.0;
    ParityClass parity = ParityClass::Mixed;
    /// |sum_l c_l (-1)^{m . s_l}|^2.
    double phase_factor = 0.0;
    double bound_general = 0.0;
    /// Vacuum-overlap bound; only meaningful (and only present) when the
    /// parity class is not Mixed.
    std::optional<double> bound_vacuum;
};

/// Exact fidelity between the heralded state and the target.
///
/// Evaluated as exp(-N(q^2+p^2)/2) |sum_l conj(c_l) I(x_l)|^2 / J with one
/// overlap integral per signed amplitude pattern. When the kernel commutes
/// with every sign flip in the target (single mode, GHZ-type sign patterns,
/// or mode-decoupled states) this reduces to the factored form
/// phase_factor * exp(-N(q^2+p^2)/2) * R; for correlated states with
/// mixed-sign targets the factored form is only approximate, so the signed
/// per-term sum is what is returned.
FidelityReport fidelity_exact(const GaussianState& state, const SubtractionSpec& spec,
                              const BinaryPhaseTarget& target);

/// R = |I|^2 / J at the unsigned amplitude. R(tau = 0) = 1 by construction
/// (the two integrals coincide).
double ratio_R(const GaussianState& state, const SubtractionSpec& spec,
               double gamma_q, double gamma_p);

/// |sum_l c_l (-1)^{m . s_l}|^2 exp(-N (q^2 + p^2) / 2); valid as a fidelity
/// upper bound in the small-amplitude regime.
double bound_general(const BinaryPhaseTarget& target, const std::vector<int>& pattern);

/// |<0|^N |C>|^2; informative only for non-Mixed parity classes.
double bound_vacuum(const BinaryPhaseTarget& target);

/// f = 1^T tanh(g r) 1 with a validity certificate. The cluster-class bound
/// |f| <= N tanh((N-1) r) applies to zero-diagonal matrices with entries in
/// {-1, 0, 1}; for self-inverse g the identity f = (1^T g 1) tanh(r) holds
/// and 1^T g 1 <= N.
struct FnCertificate {
    double value = 0.0;
    bool cluster_class = false;
    double cluster_bound = 0.0;
    bool within_bound = false;
    bool self_inverse = false;
    double self_inverse_value = 0.0;
};
FnCertificate f_n(const Eigen::MatrixXd& g, double r);

enum class AmplitudeBoundKind { Cccs, Ghz };

/// Amplitude-dependent bound exp(-(N - f tau) q^2 / 2 - (N + f tau) p^2 / 2)
/// over the target normalization; maximum 1/2^N (Cccs) or 1 (Ghz) at zero
/// amplitude. Valid for tau << 1 and small amplitudes.
double amplitude_bound(AmplitudeBoundKind kind, int n_modes, double tau, double f,
                       double gamma_q, double gamma_p);

/// Closed form for the odd cat target after single-photon subtraction from a
/// single-mode squeezed vacuum.
double closed_form_F2(double r, double tau, double gamma_q, double gamma_p);

/// Closed form for the |+> target after single-photon subtraction from a
/// single-mode squeezed vacuum.
double closed_form_F3(double r, double tau, double gamma_q, double gamma_p);

}  // namespace photsub

#endif
