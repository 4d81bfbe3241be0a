#include "photsub/targets.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace photsub {

namespace {

constexpr double kMinGamma = 1e-6;  // odd-cat normalization guard

struct CatNorms {
    double inv_n0;
    double inv_n1;
};

CatNorms cat_norms(double gamma_q, double gamma_p) {
    const double e2 = std::exp(-(gamma_q * gamma_q + gamma_p * gamma_p));
    return {1.0 / std::sqrt(2.0 + 2.0 * e2), 1.0 / std::sqrt(2.0 - 2.0 * e2)};
}

void require_amplitude(double gamma_q, double gamma_p, const char* what) {
    if (!std::isfinite(gamma_q) || !std::isfinite(gamma_p)) {
        throw std::invalid_argument(std::string(what) + ": non-finite amplitude");
    }
    const double abs_gamma = std::sqrt(0.5 * (gamma_q * gamma_q + gamma_p * gamma_p));
    if (abs_gamma < kMinGamma) {
        throw std::invalid_argument(
            std::string(what) + ": |gamma| below 1e-6, odd-cat normalization diverges");
    }
}

}  // namespace

const char* to_string(ParityClass c) {
    switch (c) {
        case ParityClass::AllEven: return "even";
        case ParityClass::AllOdd: return "odd";
        case ParityClass::Mixed: return "mixed";
    }
    return "?";
}

void BinaryPhaseTarget::validate_terms() const {
    if (terms_.empty()) {
        throw std::invalid_argument("BinaryPhaseTarget: no terms");
    }
    std::set<std::vector<std::uint8_t>> seen;
    double coeff_scale = 0.0;
    for (const auto& t : terms_) {
        if (static_cast<int>(t.signs.size()) != n_modes_) {
            throw std::invalid_argument("BinaryPhaseTarget: sign vector length mismatch");
        }
        for (auto s : t.signs) {
            if (s > 1) throw std::invalid_argument("BinaryPhaseTarget: sign bits must be 0 or 1");
        }
        if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
            throw std::invalid_argument("BinaryPhaseTarget: non-finite coefficient");
        }
        if (!seen.insert(t.signs).second) {
            throw std::invalid_argument("BinaryPhaseTarget: duplicate sign pattern");
        }
        coeff_scale += std::abs(t.coeff);
    }
    // Gram-sum cancellation noise grows with the coefficient magnitudes; the
    // tolerance tracks it so near-degenerate graph states stay constructible.
    const double tol = 1e-10 + 1e-14 * coeff_scale * coeff_scale;
    const double err = norm_error();
    if (err > tol) {
        std::ostringstream msg;
        msg << "BinaryPhaseTarget: normalization off by " << err << " (tolerance " << tol << ")";
        throw std::invalid_argument(msg.str());
    }
}

double BinaryPhaseTarget::norm_error() const {
    const double cross = std::exp(-(gamma_q_ * gamma_q_ + gamma_p_ * gamma_p_));
    Complex gram(0.0, 0.0);
    for (const auto& a : terms_) {
        for (const auto& b : terms_) {
            int hamming = 0;
            for (int j = 0; j < n_modes_; ++j) hamming += a.signs[j] != b.signs[j];
            gram += std::conj(a.coeff) * b.coeff * std::pow(cross, hamming);
        }
    }
    return std::abs(gram - Complex(1.0, 0.0));
}

BinaryPhaseTarget BinaryPhaseTarget::cat_even(double gamma_q, double gamma_p) {
    if (!std::isfinite(gamma_q) || !std::isfinite(gamma_p)) {
        throw std::invalid_argument("cat_even: non-finite amplitude");
    }
    const CatNorms n = cat_norms(gamma_q, gamma_p);
    BinaryPhaseTarget t;
    t.n_modes_ = 1;
    t.gamma_q_ = gamma_q;
    t.gamma_p_ = gamma_p;
    t.kind_ = Kind::TwoTerm;
    t.terms_ = {{Complex(n.inv_n0, 0.0), {0}}, {Complex(n.inv_n0, 0.0), {1}}};
    t.validate_terms();
    return t;
}

BinaryPhaseTarget BinaryPhaseTarget::cat_odd(double gamma_q, double gamma_p) {
    require_amplitude(gamma_q, gamma_p, "cat_odd");
    const CatNorms n = cat_norms(gamma_q, gamma_p);
    BinaryPhaseTarget t;
    t.n_modes_ = 1;
    t.gamma_q_ = gamma_q;
    t.gamma_p_ = gamma_p;
    t.kind_ = Kind::TwoTerm;
    t.terms_ = {{Complex(n.inv_n1, 0.0), {0}}, {Complex(-n.inv_n1, 0.0), {1}}};
    t.validate_terms();
    return t;
}

BinaryPhaseTarget BinaryPhaseTarget::plus_state(double gamma_q, double gamma_p) {
    require_amplitude(gamma_q, gamma_p, "plus_state");
    const CatNorms n = cat_norms(gamma_q, gamma_p);
    const double c_plus = (n.inv_n0 + n.inv_n1) / std::sqrt(2.0);
    const double c_minus = (n.inv_n0 - n.inv_n1) / std::sqrt(2.0);
    BinaryPhaseTarget t;
    t.n_modes_ = 1;
    t.gamma_q_ = gamma_q;
    t.gamma_p_ = gamma_p;
    t.kind_ = Kind::TwoTerm;
    t.terms_ = {{Complex(c_plus, 0.0), {0}}, {Complex(c_minus, 0.0), {1}}};
    t.validate_terms();
    return t;
}

BinaryPhaseTarget BinaryPhaseTarget::ghz(int n_modes, double gamma_q, double gamma_p) {
    if (n_modes < 1) throw std::invalid_argument("ghz: need at least one mode");
    if (!std::isfinite(gamma_q) || !std::isfinite(gamma_p)) {
        throw std::invalid_argument("ghz: non-finite amplitude");
    }
    const double e2 = std::exp(-n_modes * (gamma_q * gamma_q + gamma_p * gamma_p));
    const double inv_ng = 1.0 / std::sqrt(2.0 + 2.0 * e2);
    BinaryPhaseTarget t;
    t.n_modes_ = n_modes;
    t.gamma_q_ = gamma_q;
    t.gamma_p_ = gamma_p;
    t.kind_ = Kind::TwoTerm;
    t.terms_ = {{Complex(inv_ng, 0.0), std::vector<std::uint8_t>(n_modes, 0)},
                {Complex(inv_ng, 0.0), std::vector<std::uint8_t>(n_modes, 1)}};
    t.validate_terms();
    return t;
}

BinaryPhaseTarget BinaryPhaseTarget::cccs(int n_modes,
                                          const std::vector<std::pair<int, int>>& edges,
                                          double gamma_q, double gamma_p) {
    if (n_modes < 1 || n_modes > 12) {
        throw std::invalid_argument("cccs: mode count must be in [1, 12]");
    }
    require_amplitude(gamma_q, gamma_p, "cccs");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_modes || v >= n_modes) {
            throw std::invalid_argument("cccs: edge endpoint out of range");
        }
        if (u == v) throw std::invalid_argument("cccs: self-loops are not allowed");
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
            throw std::invalid_argument("cccs: duplicate edge");
        }
    }

    const CatNorms n = cat_norms(gamma_q, gamma_p);
    const std::size_t size = std::size_t(1) << n_modes;

    // Cat-basis amplitude of |b> is +-2^{-N/2}; expanding each cat qubit into
    // coherent terms gives c_s as a Walsh-Hadamard transform of the weights
    // (-1)^{edges inside b} * prod_j invN_{b_j} (up to the 2^{-N/2} factor).
    std::vector<double> w(size);
    for (std::size_t b = 0; b < size; ++b) {
        double val = 1.0;
        for (int j = 0; j < n_modes; ++j) val *= (b >> j & 1u) ? n.inv_n1 : n.inv_n0;
        int sign = 0;
        for (auto [u, v] : edges) sign ^= static_cast<int>((b >> u & 1u) & (b >> v & 1u));
        w[b] = sign ? -val : val;
    }
    for (std::size_t len = 1; len < size; len <<= 1) {
        for (std::size_t i = 0; i < size; i += len << 1) {
            for (std::size_t k = i; k < i + len; ++k) {
                const double a = w[k], c = w[k + len];
                w[k] = a + c;
                w[k + len] = a - c;
            }
        }
    }

    BinaryPhaseTarget t;
    t.n_modes_ = n_modes;
    t.gamma_q_ = gamma_q;
    t.gamma_p_ = gamma_p;
    t.kind_ = Kind::Graph;
    t.edges_ = edges;
    t.inv_n0_ = n.inv_n0;
    t.inv_n1_ = n.inv_n1;
    const double scale = std::pow(2.0, -0.5 * n_modes);
    t.terms_.reserve(size);
    for (std::size_t s = 0; s < size; ++s) {
        std::vector<std::uint8_t> bits(n_modes);
        for (int j = 0; j < n_modes; ++j) bits[j] = static_cast<std::uint8_t>(s >> j & 1u);
        t.terms_.push_back({Complex(scale * w[s], 0.0), std::move(bits)});
    }
    t.validate_terms();
    return t;
}

BinaryPhaseTarget BinaryPhaseTarget::from_terms(int n_modes, double gamma_q, double gamma_p,
                                                std::vector<TargetTerm> terms) {
    if (n_modes < 1) throw std::invalid_argument("from_terms: need at least one mode");
    BinaryPhaseTarget t;
    t.n_modes_ = n_modes;
    t.gamma_q_ = gamma_q;
    t.gamma_p_ = gamma_p;
    t.kind_ = Kind::Generic;
    t.terms_ = std::move(terms);
    t.validate_terms();
    return t;
}

Complex BinaryPhaseTarget::phase_sum(const std::vector<int>& pattern) const {
    if (static_cast<int>(pattern.size()) != n_modes_) {
        throw std::invalid_argument("phase_sum: pattern length mismatch");
    }
    if (kind_ == Kind::Graph) {
        // Only the parity of the pattern enters; summing the coherent terms
        // directly would cancel catastrophically at small gamma.
        double val = std::pow(2.0, 0.5 * n_modes_);
        for (int j = 0; j < n_modes_; ++j) {
            val *= (pattern[j] % 2) ? inv_n1_ : inv_n0_;
        }
        int sign = 0;
        for (auto [u, v] : edges_) sign ^= (pattern[u] % 2) & (pattern[v] % 2);
        return Complex(sign ? -val : val, 0.0);
    }
    Complex total(0.0, 0.0);
    for (const auto& t : terms_) {
        int dot = 0;
        for (int j = 0; j < n_modes_; ++j) dot += pattern[j] * t.signs[j];
        total += (dot % 2) ? -std::conj(t.coeff) : std::conj(t.coeff);
    }
    return total;
}

double BinaryPhaseTarget::vacuum_overlap() const {
    const Complex coeff_sum = phase_sum(std::vector<int>(n_modes_, 0));
    const double decay =
        std::exp(-0.5 * n_modes_ * (gamma_q_ * gamma_q_ + gamma_p_ * gamma_p_));
    return std::norm(coeff_sum) * decay;
}

Eigen::VectorXd BinaryPhaseTarget::signed_amplitude(const TargetTerm& term) const {
    Eigen::VectorXd x(2 * n_modes_);
    for (int j = 0; j < n_modes_; ++j) {
        const double sg = term.signs[j] ? -1.0 : 1.0;
        x[j] = sg * gamma_q_;
        x[n_modes_ + j] = sg * gamma_p_;
    }
    return x;
}

ParityClass parity_class(const BinaryPhaseTarget& target, const std::vector<int>& pattern) {
    if (static_cast<int>(pattern.size()) != target.n_modes()) {
        throw std::invalid_argument("parity_class: pattern length mismatch");
    }
    bool saw_even = false, saw_odd = false;
    for (const auto& t : target.terms()) {
        int dot = 0;
        for (int j = 0; j < target.n_modes(); ++j) dot += pattern[j] * t.signs[j];
        (dot % 2 ? saw_odd : saw_even) = true;
        if (saw_even && saw_odd) return ParityClass::Mixed;
    }
    return saw_odd ? ParityClass::AllOdd : ParityClass::AllEven;
}

}  // namespace photsub
