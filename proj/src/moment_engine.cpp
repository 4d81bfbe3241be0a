#include "photsub/moment_engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace photsub {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_zero_vector(const Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] != Complex(0.0, 0.0)) return false;
    }
    return true;
}

// Recursive sum over pairings-with-loops of the expanded direction list.
// pair_w[i][j] is the contraction of directions i and j, loop_w[i] the loop
// weight (zero vector b disables loops upstream).
Complex pairing_sum(std::vector<int>& remaining,
                    const Eigen::MatrixXcd& pair_w,
                    const Eigen::VectorXcd& loop_w,
                    bool loops_allowed) {
    if (remaining.empty()) return Complex(1.0, 0.0);
    const int head = remaining.back();
    remaining.pop_back();

    Complex total(0.0, 0.0);
    if (loops_allowed) {
        total += loop_w[head] * pairing_sum(remaining, pair_w, loop_w, loops_allowed);
    }
    for (std::size_t k = 0; k < remaining.size(); ++k) {
        const int partner = remaining[k];
        std::swap(remaining[k], remaining.back());
        remaining.pop_back();
        total += pair_w(head, partner) *
                 pairing_sum(remaining, pair_w, loop_w, loops_allowed);
        remaining.push_back(partner);
        std::swap(remaining[k], remaining.back());
    }
    remaining.push_back(head);
    return total;
}

struct Factorized {
    Eigen::MatrixXcd inverse;
    Complex log_det;
};

Factorized factorize(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw std::domain_error("moment_engine: eigendecomposition of kernel failed");
    }
    Complex log_det(0.0, 0.0);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        const Complex lam = es.eigenvalues()[i];
        if (!(lam.real() > 0.0)) {
            throw std::domain_error(
                "moment_engine: kernel eigenvalue with non-positive real part; "
                "Re(M) must be positive definite");
        }
        log_det += std::log(lam);  // principal branch, |arg| < pi/2 per eigenvalue
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    return Factorized{lu.inverse(), log_det};
}

MomentResult base_from_factorized(const Factorized& f, int dim,
                                  const Eigen::VectorXcd& b) {
    const int half = dim / 2;
    Complex exponent(0.0, 0.0);
    if (!is_zero_vector(b)) {
        // b^T M^{-1} b without conjugation
        exponent = 0.5 * (b.transpose() * (f.inverse * b))(0, 0);
    }
    const Complex log_value =
        static_cast<double>(half) * std::log(2.0 * kPi) - 0.5 * f.log_det + exponent;
    MomentResult out;
    out.log_scale = log_value.real();
    out.value = std::exp(Complex(0.0, log_value.imag()));
    return out;
}

}  // namespace

int MomentProblem::total_power() const {
    int total = 0;
    for (const auto& m : monomials) total += m.power;
    return total;
}

void MomentProblem::validate() const {
    const Eigen::Index n = kernel.rows();
    if (n == 0 || kernel.cols() != n) {
        throw std::invalid_argument("MomentProblem: kernel must be square and non-empty");
    }
    if (n % 2 != 0) {
        throw std::invalid_argument("MomentProblem: dimension must be even");
    }
    if (!kernel.allFinite()) {
        throw std::invalid_argument("MomentProblem: kernel has non-finite entries");
    }
    const double scale = std::max(1.0, kernel.cwiseAbs().maxCoeff());
    if ((kernel - kernel.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("MomentProblem: kernel must be complex symmetric");
    }
    if (linear.size() != n) {
        throw std::invalid_argument("MomentProblem: linear term has wrong dimension");
    }
    if (!linear.allFinite()) {
        throw std::invalid_argument("MomentProblem: linear term has non-finite entries");
    }
    for (const auto& m : monomials) {
        if (m.direction.size() != n) {
            throw std::invalid_argument("MomentProblem: monomial direction has wrong dimension");
        }
        if (m.power < 0) {
            throw std::invalid_argument("MomentProblem: monomial power must be non-negative");
        }
        if (m.power > 0 && is_zero_vector(m.direction)) {
            throw std::invalid_argument("MomentProblem: monomial direction must be nonzero");
        }
    }
}

Complex MomentResult::to_complex() const {
    if (is_zero()) return Complex(0.0, 0.0);
    return value * std::exp(log_scale);
}

double MomentResult::log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(value)) + log_scale;
}

MomentResult scaled_sum(const std::vector<std::pair<Complex, MomentResult>>& terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& [coeff, res] : terms) {
        if (coeff == Complex(0.0, 0.0) || res.is_zero()) continue;
        top = std::max(top, res.log_scale);
    }
    MomentResult out;
    if (!std::isfinite(top)) return out;  // exact zero
    Complex acc(0.0, 0.0);
    for (const auto& [coeff, res] : terms) {
        if (coeff == Complex(0.0, 0.0) || res.is_zero()) continue;
        acc += coeff * res.value * std::exp(res.log_scale - top);
    }
    out.value = acc;
    out.log_scale = top;
    return out;
}

MomentResult base_integral(const Eigen::MatrixXcd& M, const Eigen::VectorXcd& b) {
    MomentProblem p{M, b, {}};
    p.validate();
    return base_from_factorized(factorize(M), p.dim(), b);
}

MomentResult moment(const MomentProblem& problem) {
    problem.validate();

    std::vector<const Monomial*> expanded_src;
    for (const auto& m : problem.monomials) {
        if (m.power == 0) continue;  // degenerate entries dropped
        for (int k = 0; k < m.power; ++k) expanded_src.push_back(&m);
    }

    const Factorized f = factorize(problem.kernel);
    MomentResult base = base_from_factorized(f, problem.dim(), problem.linear);
    const int p = static_cast<int>(expanded_src.size());
    if (p == 0) return base;

    const bool has_linear = !is_zero_vector(problem.linear);
    if (!has_linear && p % 2 != 0) {
        return MomentResult{};  // odd moment of a centered Gaussian
    }

    Eigen::MatrixXcd dirs(problem.dim(), p);
    for (int i = 0; i < p; ++i) dirs.col(i) = expanded_src[i]->direction;

    const Eigen::MatrixXcd inv_dirs = f.inverse * dirs;
    const Eigen::MatrixXcd pair_w = dirs.transpose() * inv_dirs;
    Eigen::VectorXcd loop_w = Eigen::VectorXcd::Zero(p);
    if (has_linear) {
        const Eigen::VectorXcd mu = f.inverse * problem.linear;
        loop_w = dirs.transpose() * mu;
    }

    std::vector<int> remaining(p);
    for (int i = 0; i < p; ++i) remaining[i] = i;
    const Complex w = pairing_sum(remaining, pair_w, loop_w, has_linear);

    base.value *= w;
    return base;
}

MomentResult moment_reference(const MomentProblem& problem) {
    problem.validate();

    std::vector<Monomial> mono;
    for (const auto& m : problem.monomials) {
        if (m.power > 0) mono.push_back(m);
    }

    const Factorized f = factorize(problem.kernel);
    MomentResult base = base_from_factorized(f, problem.dim(), problem.linear);
    const int nvars = static_cast<int>(mono.size());
    if (nvars == 0) return base;

    // Shift b -> b + sum_j lambda_j u_j. The lambda-dependent part of the
    // exponent is S(lambda) = sum_j beta_j lambda_j + sum_{j<=k} c_{jk}
    // lambda_j lambda_k; the required derivative is m! times the coefficient
    // of prod lambda_j^{m_j} in exp(S).
    const Eigen::VectorXcd mu = f.inverse * problem.linear;
    std::vector<Complex> beta(nvars);
    Eigen::MatrixXcd cross(nvars, nvars);
    for (int j = 0; j < nvars; ++j) {
        beta[j] = (mono[j].direction.transpose() * mu)(0, 0);
        const Eigen::VectorXcd invd = f.inverse * mono[j].direction;
        for (int k = 0; k < nvars; ++k) {
            cross(j, k) = (mono[k].direction.transpose() * invd)(0, 0);
        }
    }

    // Dense truncated polynomial over exponent tuples capped at the powers.
    std::vector<int> caps(nvars), strides(nvars);
    int table = 1;
    for (int j = 0; j < nvars; ++j) {
        caps[j] = mono[j].power;
        strides[j] = table;
        table *= caps[j] + 1;
    }
    const int deg = problem.total_power();

    std::vector<Complex> s_poly(table, Complex(0.0, 0.0));
    for (int j = 0; j < nvars; ++j) {
        s_poly[strides[j]] += beta[j];
        for (int k = j; k < nvars; ++k) {
            if (j == k && caps[j] < 2) continue;  // lambda_j^2 over the cap
            s_poly[strides[j] + strides[k]] += (j == k) ? 0.5 * cross(j, j) : cross(j, k);
        }
    }

    auto multiply = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
        std::vector<Complex> out(table, Complex(0.0, 0.0));
        for (int ia = 0; ia < table; ++ia) {
            if (a[ia] == Complex(0.0, 0.0)) continue;
            for (int ib = 0; ib < table; ++ib) {
                if (b[ib] == Complex(0.0, 0.0)) continue;
                // componentwise exponent addition with per-variable caps
                int rest_a = ia, rest_b = ib, idx = 0;
                bool ok = true;
                for (int j = nvars - 1; j >= 0; --j) {
                    const int ea = rest_a / strides[j];
                    const int eb = rest_b / strides[j];
                    rest_a %= strides[j];
                    rest_b %= strides[j];
                    if (ea + eb > caps[j]) { ok = false; break; }
                    idx += (ea + eb) * strides[j];
                }
                if (ok) out[idx] += a[ia] * b[ib];
            }
        }
        return out;
    };

    std::vector<Complex> expo(table, Complex(0.0, 0.0));
    expo[0] = Complex(1.0, 0.0);
    std::vector<Complex> term(table, Complex(0.0, 0.0));
    term[0] = Complex(1.0, 0.0);
    for (int k = 1; k <= deg; ++k) {
        term = multiply(term, s_poly);
        const double inv_k = 1.0 / static_cast<double>(k);
        for (int idx = 0; idx < table; ++idx) {
            term[idx] *= inv_k;
            expo[idx] += term[idx];
        }
    }

    double factorials = 1.0;
    for (int j = 0; j < nvars; ++j) {
        for (int k = 2; k <= caps[j]; ++k) factorials *= k;
    }
    base.value *= expo[table - 1] * factorials;
    if (expo[table - 1] == Complex(0.0, 0.0)) return MomentResult{};
    return base;
}

}  // namespace photsub
