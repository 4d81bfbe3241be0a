// Test-only reference computations, independent of the library's fast paths.
#ifndef PHOTSUB_TESTS_ORACLES_HPP
#define PHOTSUB_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "photsub/moment_engine.hpp"

namespace photsub::testing {

/// Gauss-Hermite rule for weight exp(-t^2) via the Golub-Welsch tridiagonal.
inline void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double off = std::sqrt(k / 2.0);
        j(k - 1, k) = off;
        j(k, k - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    nodes.resize(n);
    weights.resize(n);
    const double sqrt_pi = std::sqrt(3.14159265358979323846);
    for (int k = 0; k < n; ++k) {
        nodes[k] = es.eigenvalues()[k];
        const double v0 = es.eigenvectors()(0, k);
        weights[k] = sqrt_pi * v0 * v0;
    }
}

/// Two-dimensional quadrature for a single-mode moment problem. The real part
/// of the kernel is factored out analytically so the rule sees weight
/// exp(-u^2) times an entire function.
inline Complex quadrature_moment_2d(const MomentProblem& problem, int n_nodes = 80) {
    if (problem.dim() != 2) throw std::invalid_argument("quadrature oracle: dim must be 2");
    const Eigen::Matrix2d s = problem.kernel.real();
    const Eigen::Matrix2d t = problem.kernel.imag();
    Eigen::LLT<Eigen::Matrix2d> llt(s);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("quadrature oracle: Re(M) not positive definite");
    }
    const Eigen::Matrix2d l = llt.matrixL();
    // x = sqrt(2) L^{-T} u maps the kernel's real part onto the weight
    const Eigen::Matrix2d map = std::sqrt(2.0) * l.transpose().inverse();
    const double jac = 2.0 / l.determinant();

    std::vector<double> nodes, weights;
    gauss_hermite(n_nodes, nodes, weights);

    Complex total(0.0, 0.0);
    for (int a = 0; a < n_nodes; ++a) {
        for (int b = 0; b < n_nodes; ++b) {
            const Eigen::Vector2d x = map * Eigen::Vector2d(nodes[a], nodes[b]);
            Complex expo(0.0, 0.0);
            // remaining exponent: -i x^T T x / 2 + b^T x
            expo += Complex(0.0, -0.5) * (x.transpose() * (t * x))(0, 0);
            expo += problem.linear[0] * x[0] + problem.linear[1] * x[1];
            Complex f = std::exp(expo);
            for (const auto& mono : problem.monomials) {
                const Complex base = mono.direction[0] * x[0] + mono.direction[1] * x[1];
                for (int k = 0; k < mono.power; ++k) f *= base;
            }
            total += weights[a] * weights[b] * f;
        }
    }
    return jac * total;
}

/// Random complex symmetric kernel with Re = I plus a small perturbation.
inline Eigen::MatrixXcd random_kernel(int dim, std::mt19937& rng, double spread = 0.25) {
    std::uniform_real_distribution<double> u(-spread, spread);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            const Complex pert(u(rng), u(rng));
            m(i, j) += pert;
            if (i != j) m(j, i) += pert;
        }
    }
    return m;
}

inline Eigen::MatrixXd random_cluster_coupling(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-1, 1);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            g(i, j) = g(j, i) = pick(rng);
        }
    }
    return g;
}

}  // namespace photsub::testing

#endif
