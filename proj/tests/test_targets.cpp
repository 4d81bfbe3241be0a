#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "photsub/targets.hpp"

using namespace photsub;

TEST_CASE("even cat at zero amplitude is the vacuum") {
    const auto t = BinaryPhaseTarget::cat_even(0.0, 0.0);
    CHECK(t.vacuum_overlap() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.terms().size() == 2);
    CHECK(t.terms()[0].coeff.real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("even cat coefficients at q = 0.5") {
    const auto t = BinaryPhaseTarget::cat_even(0.5, 0.0);
    // both coefficients 1/N0 with N0^2 = 2 + 2 exp(-1/4)
    const double inv_n0 = 0.5301775650127974;
    CHECK(t.terms()[0].coeff.real() == doctest::Approx(inv_n0).epsilon(1e-14));
    CHECK(t.terms()[1].coeff.real() == doctest::Approx(inv_n0).epsilon(1e-14));
    CHECK(t.norm_error() < 1e-12);
}

TEST_CASE("odd cat has no vacuum component") {
    for (double q : {0.2, 0.7, 1.5}) {
        const auto t = BinaryPhaseTarget::cat_odd(q, 0.1);
        CHECK(t.vacuum_overlap() == doctest::Approx(0.0).epsilon(1e-20));
        CHECK(t.norm_error() < 1e-11);
    }
}

TEST_CASE("odd cat and plus reject tiny amplitudes") {
    CHECK_THROWS_AS(BinaryPhaseTarget::cat_odd(1e-7, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BinaryPhaseTarget::plus_state(0.0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(BinaryPhaseTarget::cccs(2, {{0, 1}}, 1e-8, 0.0), std::invalid_argument);
}

TEST_CASE("plus-state coefficients and signs") {
    const auto t = BinaryPhaseTarget::plus_state(0.5, 0.0);
    CHECK(t.terms()[0].coeff.real() == doctest::Approx(1.4380021721225715).epsilon(1e-13));
    CHECK(t.terms()[1].coeff.real() == doctest::Approx(-0.6882178692155301).epsilon(1e-13));
    CHECK(t.norm_error() < 1e-12);
    CHECK(t.vacuum_overlap() ==
          doctest::Approx(1.0 / (2.0 * std::cosh(0.125))).epsilon(1e-13));

    for (double q = 0.02; q <= 2.0; q += 0.1) {
        const auto s = BinaryPhaseTarget::plus_state(q, 0.5 * q);
        const double c_plus = s.terms()[0].coeff.real();
        const double c_minus = s.terms()[1].coeff.real();
        CHECK(c_plus > 0.0);
        CHECK(c_minus < 0.0);
        CHECK(c_plus > c_minus);
    }
}

TEST_CASE("GHZ reductions and overlaps") {
    // single-qubit case coincides with the even cat
    const auto g1 = BinaryPhaseTarget::ghz(1, 0.4, 0.1);
    const auto cat = BinaryPhaseTarget::cat_even(0.4, 0.1);
    CHECK(g1.terms()[0].coeff.real() ==
          doctest::Approx(cat.terms()[0].coeff.real()).epsilon(1e-14));

    const auto g3 = BinaryPhaseTarget::ghz(3, 1e-5, 0.0);
    CHECK(g3.vacuum_overlap() == doctest::Approx(1.0).epsilon(1e-8));

    const auto g2 = BinaryPhaseTarget::ghz(2, 0.4, 0.0);
    const double x = 2.0 * 0.16;  // N (q^2 + p^2)
    CHECK(g2.vacuum_overlap() ==
          doctest::Approx(2.0 * std::exp(-x / 2.0) / (1.0 + std::exp(-x))).epsilon(1e-13));
    CHECK(g2.vacuum_overlap() == doctest::Approx(0.9873351265321043).epsilon(1e-13));
}

TEST_CASE("two-mode cluster coefficients") {
    const auto t = BinaryPhaseTarget::cccs(2, {{0, 1}}, 0.5, 0.0);
    REQUIRE(t.terms().size() == 4);
    auto coeff_of = [&](std::vector<std::uint8_t> bits) {
        for (const auto& term : t.terms()) {
            if (term.signs == bits) return term.coeff.real();
        }
        FAIL("missing sign pattern");
        return 0.0;
    };
    CHECK(coeff_of({0, 0}) == doctest::Approx(-0.19255558506466540).epsilon(1e-12));
    CHECK(coeff_of({1, 0}) == doctest::Approx(1.2707470412683991).epsilon(1e-12));
    CHECK(coeff_of({0, 1}) == doctest::Approx(1.2707470412683991).epsilon(1e-12));
    CHECK(coeff_of({1, 1}) == doctest::Approx(-1.7867619965863348).epsilon(1e-12));
    CHECK(t.norm_error() < 1e-11);
}

TEST_CASE("cluster coefficient inequalities behind the even-pattern choice") {
    for (double q = 0.1; q <= 2.0; q += 0.17) {
        const auto t = BinaryPhaseTarget::cccs(2, {{0, 1}}, q, 0.0);
        double c1 = 0.0, c3 = 0.0;
        for (const auto& term : t.terms()) {
            if (term.signs == std::vector<std::uint8_t>{0, 1}) c1 = term.coeff.real();
            if (term.signs == std::vector<std::uint8_t>{1, 1}) c3 = term.coeff.real();
        }
        CHECK(c3 < 0.0);
        CHECK(c1 > c3);
    }
}

TEST_CASE("single-vertex empty graph is the plus state") {
    const auto graph = BinaryPhaseTarget::cccs(1, {}, 0.6, 0.2);
    const auto plus = BinaryPhaseTarget::plus_state(0.6, 0.2);
    for (int i = 0; i < 2; ++i) {
        CHECK(graph.terms()[i].coeff.real() ==
              doctest::Approx(plus.terms()[i].coeff.real()).epsilon(1e-13));
    }
}

TEST_CASE("graph-state coefficients respect graph automorphisms") {
    // path 0-1-2: swapping the endpoints is an automorphism
    const auto t = BinaryPhaseTarget::cccs(3, {{0, 1}, {1, 2}}, 0.5, 0.3);
    auto coeff_of = [&](std::vector<std::uint8_t> bits) {
        for (const auto& term : t.terms()) {
            if (term.signs == bits) return term.coeff.real();
        }
        FAIL("missing sign pattern");
        return 0.0;
    };
    CHECK(coeff_of({1, 0, 0}) == doctest::Approx(coeff_of({0, 0, 1})).epsilon(1e-13));
    CHECK(coeff_of({1, 1, 0}) == doctest::Approx(coeff_of({0, 1, 1})).epsilon(1e-13));
}

TEST_CASE("vacuum overlap limits at small amplitude") {
    const double q = std::sqrt(2.0) * 1e-4;  // |gamma| = 1e-4
    for (int n = 1; n <= 6; ++n) {
        std::vector<std::pair<int, int>> edges;
        for (int k = 0; k + 1 < n; ++k) edges.emplace_back(k, k + 1);
        const auto t = BinaryPhaseTarget::cccs(n, edges, q, 0.0);
        CHECK(std::abs(t.vacuum_overlap() - std::pow(0.5, n)) < 1e-6);
    }
    const auto g4 = BinaryPhaseTarget::ghz(4, q, 0.0);
    CHECK(std::abs(g4.vacuum_overlap() - 1.0) < 1e-6);
}

TEST_CASE("normalization across the amplitude grid") {
    for (double q = 0.0141; q <= 2.8; q *= 1.9) {
        CHECK(BinaryPhaseTarget::cat_even(q, 0.3 * q).norm_error() < 1e-10);
        CHECK(BinaryPhaseTarget::cat_odd(q, 0.3 * q).norm_error() <
              1e-10 + 1e-13 / (q * q));
        CHECK(BinaryPhaseTarget::ghz(3, q, 0.3 * q).norm_error() < 1e-10);
    }
}

TEST_CASE("closed-form pattern sums agree with direct summation at moderate amplitude") {
    const auto t = BinaryPhaseTarget::cccs(3, {{0, 1}, {0, 2}}, 0.7, 0.4);
    const auto generic = BinaryPhaseTarget::from_terms(3, 0.7, 0.4,
                                                       {t.terms().begin(), t.terms().end()});
    for (const std::vector<int>& m :
         {std::vector<int>{0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {1, 1, 1}, {2, 2, 2}}) {
        const Complex a = t.phase_sum(m);
        const Complex b = generic.phase_sum(m);
        CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("parity classification") {
    const auto cluster = BinaryPhaseTarget::cccs(2, {{0, 1}}, 0.4, 0.0);
    CHECK(parity_class(cluster, {2, 2}) == ParityClass::AllEven);
    CHECK(parity_class(cluster, {1, 0}) == ParityClass::Mixed);

    const auto ghz2 = BinaryPhaseTarget::ghz(2, 0.4, 0.0);
    CHECK(parity_class(ghz2, {1, 0}) == ParityClass::Mixed);
    CHECK(parity_class(ghz2, {1, 1}) == ParityClass::AllEven);

    const auto odd = BinaryPhaseTarget::cat_odd(0.4, 0.0);
    CHECK(parity_class(odd, {1}) == ParityClass::Mixed);
    CHECK(parity_class(odd, {2}) == ParityClass::AllEven);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(BinaryPhaseTarget::cccs(2, {{0, 0}}, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BinaryPhaseTarget::cccs(2, {{0, 2}}, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BinaryPhaseTarget::cccs(2, {{0, 1}, {1, 0}}, 0.5, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(BinaryPhaseTarget::cccs(13, {}, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("generic targets reject malformed terms") {
    CHECK_THROWS_AS(BinaryPhaseTarget::from_terms(
                        1, 0.5, 0.0, {{Complex(1.0, 0.0), {0}}, {Complex(1.0, 0.0), {0}}}),
                    std::invalid_argument);  // duplicate pattern
    CHECK_THROWS_AS(BinaryPhaseTarget::from_terms(1, 0.5, 0.0, {{Complex(1.0, 0.0), {0, 1}}}),
                    std::invalid_argument);  // wrong length
    CHECK_THROWS_AS(BinaryPhaseTarget::from_terms(1, 0.5, 0.0, {{Complex(5.0, 0.0), {0}}}),
                    std::invalid_argument);  // not normalized
}
