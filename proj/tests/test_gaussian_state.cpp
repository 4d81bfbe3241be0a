#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "photsub/gaussian_state.hpp"

using namespace photsub;
using photsub::testing::random_cluster_coupling;

namespace {
constexpr double kTanh1 = 0.7615941559557649;

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("zero coupling gives the vacuum") {
    const auto state = GaussianState::from_hamiltonian(Eigen::MatrixXd::Zero(2, 2), 1.0);
    CHECK(max_abs((state.cov() - 0.5 * Eigen::MatrixXd::Identity(4, 4)).cast<Complex>()) < 1e-14);
    CHECK(max_abs(state.g_tilde()) < 1e-14);
    CHECK(max_abs(state.kernel() - 0.5 * Eigen::MatrixXcd::Identity(4, 4)) < 1e-14);
}

TEST_CASE("single-mode squeezer blocks") {
    Eigen::MatrixXd g(1, 1);
    g << 1.0;
    const auto state = GaussianState::from_hamiltonian(g, 1.0);
    const Eigen::MatrixXcd gt = state.g_tilde();
    CHECK(gt(0, 0).real() == doctest::Approx(-kTanh1).epsilon(1e-14));
    CHECK(gt(0, 1).imag() == doctest::Approx(kTanh1).epsilon(1e-14));
    CHECK(gt(1, 0).imag() == doctest::Approx(kTanh1).epsilon(1e-14));
    CHECK(gt(1, 1).real() == doctest::Approx(kTanh1).epsilon(1e-14));
    CHECK(std::abs(gt(0, 0).imag()) < 1e-14);

    // covariance diag(e^{2r}, e^{-2r}) / 2
    CHECK(state.cov()(0, 0) == doctest::Approx(0.5 * std::exp(2.0)).epsilon(1e-13));
    CHECK(state.cov()(1, 1) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-13));
}

TEST_CASE("self-inverse coupling reduces tanh to a scalar factor") {
    Eigen::MatrixXd g(2, 2);
    g << 0, 1, 1, 0;
    const auto state = GaussianState::from_hamiltonian(g, 0.5);
    const Eigen::MatrixXcd gt = state.g_tilde();
    // top-left block is -tanh(g r) = -g tanh(r) since g^2 = I
    const double t = std::tanh(0.5);
    CHECK(gt(0, 1).real() == doctest::Approx(-t).epsilon(1e-14));
    CHECK(gt(1, 0).real() == doctest::Approx(-t).epsilon(1e-14));
    CHECK(std::abs(gt(0, 0)) < 1e-14);
    CHECK(std::abs(gt(1, 1)) < 1e-14);
}

TEST_CASE("vacuum covariance reproduces the identity kernel") {
    const auto state = GaussianState::from_covariance(0.5 * Eigen::MatrixXd::Identity(2, 2));
    CHECK(max_abs(state.kernel() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)) < 1e-13);
    CHECK(max_abs((state.gamma() - Eigen::MatrixXd::Identity(2, 2)).cast<Complex>()) < 1e-14);
}

TEST_CASE("squeezed covariance matches the generator construction") {
    Eigen::MatrixXd v(2, 2);
    v << 0.5 * std::exp(2.0), 0.0, 0.0, 0.5 * std::exp(-2.0);
    const auto from_cov = GaussianState::from_covariance(v);
    Eigen::MatrixXd g(1, 1);
    g << 1.0;
    const auto from_gen = GaussianState::from_hamiltonian(g, 1.0);
    CHECK(max_abs(from_cov.kernel() - from_gen.kernel()) < 1e-12);
    CHECK(!from_cov.generator().has_value());
    CHECK(from_gen.generator().has_value());
}

TEST_CASE("impure covariance is rejected") {
    CHECK_THROWS_WITH_AS(GaussianState::from_covariance(Eigen::MatrixXd::Identity(2, 2)),
                         doctest::Contains("not pure"), std::invalid_argument);
}

TEST_CASE("invalid generators are rejected") {
    Eigen::MatrixXd g(2, 2);
    g << 0, 1, 0, 0;  // not symmetric
    CHECK_THROWS_AS(GaussianState::from_hamiltonian(g, 0.5), std::invalid_argument);

    Eigen::MatrixXd bad(1, 1);
    bad << std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(GaussianState::from_hamiltonian(bad, 0.5), std::invalid_argument);

    Eigen::MatrixXd ok(1, 1);
    ok << 1.0;
    CHECK_THROWS_AS(GaussianState::from_hamiltonian(ok, -0.1), std::invalid_argument);
    CHECK_NOTHROW(GaussianState::from_hamiltonian(ok, 0.0));  // vacuum
}

TEST_CASE("normalization prefactor") {
    Eigen::MatrixXd g1(1, 1), g3 = Eigen::MatrixXd::Zero(3, 3);
    g1 << 0.0;
    const double two_pi = 2.0 * 3.14159265358979323846;
    CHECK(GaussianState::from_hamiltonian(g1, 1.0).normalization_prefactor() ==
          doctest::Approx(two_pi).epsilon(1e-14));
    CHECK(GaussianState::from_hamiltonian(g3, 1.0).normalization_prefactor() ==
          doctest::Approx(std::pow(two_pi, 3)).epsilon(1e-13));

    g1 << 1.0;
    CHECK(GaussianState::from_hamiltonian(g1, 1.0).normalization_prefactor() ==
          doctest::Approx(7.805022850602884).epsilon(1e-13));
}

TEST_CASE("cross-construction, nilpotency, and kernel inverse on random couplings") {
    std::mt19937 rng(314159);
    std::uniform_real_distribution<double> pick_r(0.05, 1.5);
    std::uniform_int_distribution<int> pick_n(1, 4);
    std::uniform_int_distribution<int> entry(-1, 1);

    for (int trial = 0; trial < 60; ++trial) {
        const int n = pick_n(rng);
        Eigen::MatrixXd g(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) g(i, j) = g(j, i) = entry(rng);
        }
        const double r = pick_r(rng);
        const auto from_gen = GaussianState::from_hamiltonian(g, r);
        const auto from_cov = GaussianState::from_covariance(from_gen.cov());
        CHECK(max_abs(from_gen.kernel() - from_cov.kernel()) < 1e-10);

        const Eigen::MatrixXcd gt = from_gen.g_tilde();
        CHECK(max_abs(gt * gt) < 1e-12);

        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
        const Eigen::MatrixXcd lhs = (from_gen.kernel() + 0.5 * id).inverse();
        CHECK(max_abs(lhs - (id - 0.5 * gt)) < 1e-10);
    }
}

TEST_CASE("purity holds for generator-built states") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd g = random_cluster_coupling(3, rng);
        const auto state = GaussianState::from_hamiltonian(g, 0.9);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(2.0 * state.cov());
        double log_det = 0.0;
        for (int k = 0; k < 6; ++k) log_det += std::log(es.eigenvalues()[k]);
        CHECK(std::abs(log_det) < 1e-10);
    }
}
