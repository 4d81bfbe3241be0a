#ifndef PHOTSUB_TARGETS_HPP
#define PHOTSUB_TARGETS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "photsub/moment_engine.hpp"

namespace photsub {

enum class ParityClass { AllEven, AllOdd, Mixed };

const char* to_string(ParityClass c);

/// One coherent term c_l |(-1)^{s_1} gamma, ..., (-1)^{s_N} gamma>; sign bit 0
/// selects |gamma>, 1 selects |-gamma>.
struct TargetTerm {
    Complex coeff;
    std::vector<std::uint8_t> signs;
};

/// Superposition of binary-phase N-mode coherent products with a common
/// amplitude gamma = (q_gamma + i p_gamma) / sqrt(2).
///
/// The coherent-basis coefficients of graph states become exponentially
/// ill-conditioned as gamma -> 0 (the odd-cat normalization diverges), so the
/// constructors also record closed-form pattern sums that stay stable there.
class BinaryPhaseTarget {
public:
    static BinaryPhaseTarget cat_even(double gamma_q, double gamma_p);
    static BinaryPhaseTarget cat_odd(double gamma_q, double gamma_p);
    static BinaryPhaseTarget plus_state(double gamma_q, double gamma_p);
    static BinaryPhaseTarget ghz(int n_modes, double gamma_q, double gamma_p);
    /// Graph state in the cat basis, expanded to 2^N coherent terms; simple
    /// undirected graph, N <= 12.
    static BinaryPhaseTarget cccs(int n_modes,
                                  const std::vector<std::pair<int, int>>& edges,
                                  double gamma_q, double gamma_p);
    static BinaryPhaseTarget from_terms(int n_modes, double gamma_q, double gamma_p,
                                        std::vector<TargetTerm> terms);

    int n_modes() const { return n_modes_; }
    double gamma_q() const { return gamma_q_; }
    double gamma_p() const { return gamma_p_; }
    double gamma_abs_sq() const { return 0.5 * (gamma_q_ * gamma_q_ + gamma_p_ * gamma_p_); }
    const std::vector<TargetTerm>& terms() const { return terms_; }

    /// sum_l conj(c_l) (-1)^{m . s_l}; closed form for graph states, direct
    /// summation otherwise.
    Complex phase_sum(const std::vector<int>& pattern) const;

    /// |<0|^N |C>|^2 = |sum_l c_l|^2 exp(-N (q^2 + p^2) / 2).
    double vacuum_overlap() const;

    /// 2N amplitude vector (q entries then p entries) with the term's signs.
    Eigen::VectorXd signed_amplitude(const TargetTerm& term) const;

    /// |<C|C> - 1| from the coherent-term Gram sum (diagnostic).
    double norm_error() const;

private:
    enum class Kind { Generic, TwoTerm, Graph };

    BinaryPhaseTarget() = default;
    void validate_terms() const;

    int n_modes_ = 0;
    double gamma_q_ = 0.0;
    double gamma_p_ = 0.0;
    std::vector<TargetTerm> terms_;

    Kind kind_ = Kind::Generic;
    // graph-state data for the stable closed-form phase sum
    std::vector<std::pair<int, int>> edges_;
    double inv_n0_ = 0.0;
    double inv_n1_ = 0.0;
};

/// Classifies m . s_l mod 2 across the terms: constant 0 -> AllEven, constant
/// 1 -> AllOdd, otherwise Mixed.
ParityClass parity_class(const BinaryPhaseTarget& target, const std::vector<int>& pattern);

}  // namespace photsub

#endif
