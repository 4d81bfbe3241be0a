#ifndef PHOTSUB_FOCK_ORACLE_HPP
#define PHOTSUB_FOCK_ORACLE_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "photsub/targets.hpp"

namespace photsub {

/// Truncated Fock-space representation of an N-mode state. Index layout:
/// flat = n_1 * d^{N-1} + ... + n_N (mode 1 most significant), d = cutoff.
struct FockTensor {
    int n_modes = 0;
    int cutoff = 0;
    Eigen::VectorXcd amps;
    /// 1 - sum |amplitude|^2: probability mass lost to truncation.
    double norm_deficit = 0.0;
};

/// Result of a heralded subtraction. zero_probability is set (and the tensor
/// left unnormalized at zero) when the projection annihilates the state.
struct SubtractionResult {
    FockTensor heralded;
    double probability = 0.0;
    bool zero_probability = false;
};

/// exp[(r/2) sum_ij g_ij (adag_i adag_j - a_i a_j)] |0> realized by applying
/// the truncated generator exponential to the vacuum vector (scaled Taylor
/// series of the anti-Hermitian generator). Internally works at cutoff +
/// work_pad levels per mode and then truncates, so the reported amplitudes
/// are clean of edge effects. Throws when strict and norm_deficit > 1e-3.
FockTensor gaussian_to_fock(const Eigen::MatrixXd& g, double r, int cutoff,
                            bool strict = true, int work_pad = 18);

/// Per-mode beamsplitter-plus-PNR subtraction: vacuum ancilla, transmissivity
/// tau mixing, projection on |m_j>, renormalization. The ancilla column of
/// the beamsplitter unitary is applied in closed form:
///   <n - m, m| BS |n, 0> = (-1)^m sqrt(C(n, m) tau^{n-m} (1-tau)^m).
SubtractionResult subtract_fock(const FockTensor& state, double tau,
                                const std::vector<int>& pattern);

/// |<C|psi>|^2 with the target expanded in the Fock basis through coherent
/// amplitudes exp(-|gamma|^2/2) gamma^n / sqrt(n!); both sides normalized.
double fidelity_fock(const FockTensor& heralded, const BinaryPhaseTarget& target);

/// Fock amplitudes of |gamma> up to cutoff.
Eigen::VectorXcd coherent_amplitudes(Complex gamma, int cutoff);

/// Dense two-mode beamsplitter unitary exp[theta (adag b - a bdag)] with
/// cos(theta) = sqrt(tau), on a dim x dim per-mode truncation. Used to verify
/// the closed-form subtraction column.
Eigen::MatrixXd beamsplitter_unitary(int dim, double tau);

}  // namespace photsub

#endif
