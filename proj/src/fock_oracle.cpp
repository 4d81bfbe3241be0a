#include "photsub/fock_oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace photsub {

namespace {

// One quadratic generator term c * (adag_i adag_j - a_i a_j) applied to a
// flat tensor; works for i == j as well.
struct PairTerm {
    int i;
    int j;
    double coeff;
};

class GeneratorAction {
public:
    GeneratorAction(const Eigen::MatrixXd& g, double r, int n_modes, int dim)
        : n_modes_(n_modes), dim_(dim) {
        strides_.resize(n_modes);
        std::size_t size = 1;
        for (int k = n_modes - 1; k >= 0; --k) {
            strides_[k] = size;
            size *= dim;
        }
        size_ = size;
        for (int i = 0; i < n_modes; ++i) {
            for (int j = 0; j < n_modes; ++j) {
                if (g(i, j) != 0.0) terms_.push_back({i, j, 0.5 * r * g(i, j)});
            }
        }
    }

    std::size_t size() const { return size_; }

    // out = K * in
    void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
        out.setZero(size_);
        std::vector<int> occ(n_modes_, 0);
        for (std::size_t idx = 0; idx < size_; ++idx) {
            const Complex v = in[idx];
            if (v != Complex(0.0, 0.0)) {
                for (const auto& t : terms_) {
                    const int ni = occ[t.i];
                    const int nj = occ[t.j];
                    if (t.i == t.j) {
                        if (ni + 2 <= dim_ - 1) {
                            out[idx + 2 * strides_[t.i]] +=
                                t.coeff * std::sqrt(double(ni + 1) * double(ni + 2)) * v;
                        }
                        if (ni >= 2) {
                            out[idx - 2 * strides_[t.i]] -=
                                t.coeff * std::sqrt(double(ni) * double(ni - 1)) * v;
                        }
                    } else {
                        if (ni + 1 <= dim_ - 1 && nj + 1 <= dim_ - 1) {
                            out[idx + strides_[t.i] + strides_[t.j]] +=
                                t.coeff * std::sqrt(double(ni + 1) * double(nj + 1)) * v;
                        }
                        if (ni >= 1 && nj >= 1) {
                            out[idx - strides_[t.i] - strides_[t.j]] -=
                                t.coeff * std::sqrt(double(ni) * double(nj)) * v;
                        }
                    }
                }
            }
            // advance the occupation counter (row-major odometer)
            for (int k = n_modes_ - 1; k >= 0; --k) {
                if (++occ[k] < dim_) break;
                occ[k] = 0;
            }
        }
    }

    double norm_bound() const {
        double bound = 0.0;
        for (const auto& t : terms_) bound += 2.0 * std::abs(t.coeff) * (dim_ + 2);
        return bound;
    }

private:
    int n_modes_;
    int dim_;
    std::size_t size_;
    std::vector<std::size_t> strides_;
    std::vector<PairTerm> terms_;
};

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

FockTensor gaussian_to_fock(const Eigen::MatrixXd& g, double r, int cutoff,
                            bool strict, int work_pad) {
    const int n_modes = static_cast<int>(g.rows());
    if (g.rows() != g.cols() || n_modes < 1) {
        throw std::invalid_argument("gaussian_to_fock: coupling matrix must be square");
    }
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (!g.allFinite() || (g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("gaussian_to_fock: coupling matrix must be symmetric");
    }
    if (!(r >= 0.0) || cutoff < 2 || work_pad < 0) {
        throw std::invalid_argument("gaussian_to_fock: bad strength, cutoff, or padding");
    }
    if (n_modes > 3) {
        throw std::invalid_argument("gaussian_to_fock: at most 3 modes at this scale");
    }
    const int dim_work = cutoff + work_pad;
    const double mem = std::pow(double(dim_work), n_modes);
    if (mem > 4.0e6) {
        throw std::invalid_argument("gaussian_to_fock: truncated space too large");
    }

    const GeneratorAction gen(g, r, n_modes, dim_work);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(gen.size());
    psi[0] = 1.0;

    // exp(K) via 2^s substeps of a Taylor series; K is anti-Hermitian so each
    // substep is unitary and the iteration is stable.
    int halvings = 0;
    double bound = gen.norm_bound();
    while (bound > 1.0 && halvings < 40) {
        bound *= 0.5;
        ++halvings;
    }
    const double substep = std::pow(0.5, halvings);
    const long steps = 1L << halvings;
    Eigen::VectorXcd term(gen.size()), next(gen.size());
    for (long s = 0; s < steps; ++s) {
        Eigen::VectorXcd acc = psi;
        term = psi;
        for (int k = 1; k <= 120; ++k) {
            gen.apply(term, next);
            term = next * (substep / k);
            acc += term;
            if (term.norm() <= 1e-18 * acc.norm()) break;
        }
        psi = acc;
    }

    // Truncate the working space down to the requested cutoff.
    FockTensor out;
    out.n_modes = n_modes;
    out.cutoff = cutoff;
    std::size_t size = 1;
    for (int k = 0; k < n_modes; ++k) size *= cutoff;
    out.amps.setZero(size);
    std::vector<int> occ(n_modes, 0);
    double kept = 0.0;
    for (std::size_t idx = 0; idx < gen.size(); ++idx) {
        bool inside = true;
        for (int k = 0; k < n_modes; ++k) {
            if (occ[k] >= cutoff) {
                inside = false;
                break;
            }
        }
        if (inside) {
            std::size_t flat = 0;
            for (int k = 0; k < n_modes; ++k) flat = flat * cutoff + occ[k];
            out.amps[flat] = psi[idx];
            kept += std::norm(psi[idx]);
        }
        for (int k = n_modes - 1; k >= 0; --k) {
            if (++occ[k] < dim_work) break;
            occ[k] = 0;
        }
    }
    out.norm_deficit = std::max(0.0, 1.0 - kept);
    if (strict && out.norm_deficit > 1e-3) {
        std::ostringstream msg;
        msg << "gaussian_to_fock: norm deficit " << out.norm_deficit
            << " at cutoff " << cutoff << "; cutoff too small";
        throw std::runtime_error(msg.str());
    }
    return out;
}

SubtractionResult subtract_fock(const FockTensor& state, double tau,
                                const std::vector<int>& pattern) {
    if (static_cast<int>(pattern.size()) != state.n_modes) {
        throw std::invalid_argument("subtract_fock: pattern length mismatch");
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("subtract_fock: tau must lie in (0, 1)");
    }
    const int d = state.cutoff;
    const double in_norm_sq = state.amps.squaredNorm();
    if (in_norm_sq <= 0.0) {
        throw std::invalid_argument("subtract_fock: zero input state");
    }

    Eigen::VectorXcd cur = state.amps;
    std::size_t block = cur.size() / d;  // stride layout: mode 0 most significant
    for (int mode = 0; mode < state.n_modes; ++mode) {
        const int m = pattern[mode];
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(cur.size());
        // amplitude map |n> -> beta(n, m) |n - m| along this mode's axis
        std::vector<double> beta(d, 0.0);
        for (int n = m; n < d; ++n) {
            const double log_b = 0.5 * (log_binomial(n, m) + (n - m) * std::log(tau) +
                                        m * std::log1p(-tau));
            beta[n] = ((m % 2) ? -1.0 : 1.0) * std::exp(log_b);
        }
        const std::size_t outer = cur.size() / (block * d);
        for (std::size_t o = 0; o < outer; ++o) {
            for (int n = m; n < d; ++n) {
                const std::size_t src = (o * d + n) * block;
                const std::size_t dst = (o * d + (n - m)) * block;
                for (std::size_t b = 0; b < block; ++b) {
                    next[dst + b] += beta[n] * cur[src + b];
                }
            }
        }
        cur = std::move(next);
        block /= d;
    }

    SubtractionResult result;
    result.heralded.n_modes = state.n_modes;
    result.heralded.cutoff = d;
    result.heralded.norm_deficit = state.norm_deficit;
    const double out_norm_sq = cur.squaredNorm();
    result.probability = out_norm_sq / in_norm_sq;
    if (out_norm_sq <= 1e-300) {
        result.zero_probability = true;
        result.probability = 0.0;
        result.heralded.amps = Eigen::VectorXcd::Zero(cur.size());
        return result;
    }
    result.heralded.amps = cur / std::sqrt(out_norm_sq);
    return result;
}

Eigen::VectorXcd coherent_amplitudes(Complex gamma, int cutoff) {
    Eigen::VectorXcd v(cutoff);
    const double norm = std::exp(-0.5 * std::norm(gamma));
    Complex term(norm, 0.0);
    for (int n = 0; n < cutoff; ++n) {
        v[n] = term;
        term *= gamma / std::sqrt(double(n + 1));
    }
    return v;
}

double fidelity_fock(const FockTensor& heralded, const BinaryPhaseTarget& target) {
    if (heralded.n_modes != target.n_modes()) {
        throw std::invalid_argument("fidelity_fock: mode count mismatch");
    }
    const int d = heralded.cutoff;
    const Complex gamma(target.gamma_q() / std::sqrt(2.0), target.gamma_p() / std::sqrt(2.0));
    const Eigen::VectorXcd plus = coherent_amplitudes(gamma, d);
    const Eigen::VectorXcd minus = coherent_amplitudes(-gamma, d);

    Eigen::VectorXcd tv = Eigen::VectorXcd::Zero(heralded.amps.size());
    std::vector<int> occ(heralded.n_modes, 0);
    for (Eigen::Index idx = 0; idx < tv.size(); ++idx) {
        for (const auto& term : target.terms()) {
            Complex a = term.coeff;
            for (int k = 0; k < heralded.n_modes; ++k) {
                a *= term.signs[k] ? minus[occ[k]] : plus[occ[k]];
            }
            tv[idx] += a;
        }
        for (int k = heralded.n_modes - 1; k >= 0; --k) {
            if (++occ[k] < d) break;
            occ[k] = 0;
        }
    }
    const double tn = tv.squaredNorm();
    const double hn = heralded.amps.squaredNorm();
    if (tn <= 0.0 || hn <= 0.0) return 0.0;
    return std::norm(tv.dot(heralded.amps)) / (tn * hn);
}

Eigen::MatrixXd beamsplitter_unitary(int dim, double tau) {
    if (dim < 2 || !(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("beamsplitter_unitary: bad dimension or tau");
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
    const double theta = std::atan2(std::sqrt(1.0 - tau), std::sqrt(tau));
    Eigen::MatrixXd gen =
        theta * (Eigen::kroneckerProduct(a.transpose(), a).eval() -
                 Eigen::kroneckerProduct(a, a.transpose()).eval());
    return gen.exp();
}

}  // namespace photsub
