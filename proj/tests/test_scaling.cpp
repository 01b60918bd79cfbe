/// @file test_scaling.cpp
/// @brief Critical-regime arithmetic and exact exponent algebra.
#include <doctest.h>

#include <cmath>

#include "porolub/scaling.hpp"

using namespace porolub;

TEST_SUITE_BEGIN("scaling");

TEST_CASE("critical thickness") {
    // r = 2: exponents (3, 2), h = eta^3 / eps^2
    CHECK(critical_thickness(0.002, 0.01, 2.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
    // r = 3: exponents (5/2, 3/2)
    CHECK(critical_thickness(0.001, 0.01, 3.0, 1.0) ==
          doctest::Approx(std::pow(10.0, -0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(critical_thickness(0.01, 0.01, 2.0, 1.0), Error);  // eps < eta violated
}

TEST_CASE("regime classification") {
    const RegimeClassification c1 = classify_regime(0.002, 0.25, 0.01, 2.0);
    CHECK(c1.classification == RegimeClass::critical);
    CHECK(c1.lambda_est == doctest::Approx(1.0).epsilon(1e-12));

    const RegimeClassification c2 = classify_regime(0.002, 0.0025, 0.01, 2.0);
    CHECK(c2.lambda_est == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(c2.classification == RegimeClass::subcritical);

    const RegimeClassification c3 = classify_regime(0.002, 0.25, 0.0025, 2.0);
    CHECK(c3.classification == RegimeClass::supercritical);
}

TEST_CASE("round trip classify(critical_thickness) recovers lambda") {
    for (double r : {1.3, 1.5, 2.0, 2.5, 3.0})
        for (double lambda : {0.3, 1.0, 4.0}) {
            const double eps = 0.004, eta = 0.05;
            const double h = critical_thickness(eps, eta, r, lambda);
            if (!(h > 0.0 && h < 1.0)) continue;
            const RegimeClassification c = classify_regime(eps, h, eta, r);
            CHECK(c.lambda_est == doctest::Approx(lambda).epsilon(1e-12));
        }
}

TEST_CASE("exact exponent reductions") {
    // at r = 2 the critical relation is h ~ eta^3 eps^{-2}
    CHECK(critical_eta_exponent(Rational(2)) == Rational(3));
    CHECK(critical_eps_exponent(Rational(2)) == Rational(2));
    // setting h == 1 yields eta = eps^{r/(2r-1)}; at r = 2 this is eps^{2/3}
    CHECK(fissure_eta_exponent(Rational(2)) == Rational(2, 3));
    CHECK(fissure_eta_exponent(Rational(3, 2)) == Rational(3, 4));
    // consistency of the two reductions: eta-exponent times fissure exponent
    // equals the eps-exponent when h == 1
    for (const Rational r : {Rational(2), Rational(3), Rational(3, 2), Rational(7, 5)}) {
        CHECK(critical_eta_exponent(r) * fissure_eta_exponent(r) == critical_eps_exponent(r));
    }
}

TEST_CASE("predicted a-priori exponents") {
    const ExponentTable t2 = predicted_exponents(Rational(2));
    CHECK(t2.porous_velocity_in_eps == Rational(2));
    CHECK(t2.porous_gradient_in_eps == Rational(1));
    CHECK(t2.film_velocity_in_eta == Rational(2));
    CHECK(t2.film_gradient_in_eta == Rational(1));

    const ExponentTable t3 = predicted_exponents(Rational(3));
    CHECK(t3.porous_velocity_in_eps == Rational(3, 2));
    CHECK(t3.porous_gradient_in_eps == Rational(1, 2));

    CHECK_THROWS_AS(predicted_exponents(Rational(1)), Error);

    // r/(r-1) is continuous and strictly decreasing toward 1 on a sample of r
    double prev = 1e300;
    for (int k = 11; k <= 100; ++k) {
        const Rational r(k, 10);
        const double v = predicted_exponents(r).porous_velocity_in_eps.value();
        CHECK(v < prev);
        CHECK(v > 1.0);
        prev = v;
    }
}

TEST_CASE("rational arithmetic") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(3, 2) / Rational(3)) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK(parse_rational("1.5") == Rational(3, 2));
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("2") == Rational(2));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
}

TEST_CASE("regime sequence") {
    // r = 2, lambda = 1, s = 5/6: both entries admissible by construction
    const auto seq = regime_sequence(2.0, 1.0, {0.125, 0.0625}, 5.0 / 6.0);
    REQUIRE(seq.size() == 2);
    for (const auto& reg : seq) {
        CHECK(regime_admissible(reg.eps, reg.h, reg.eta));
        const RegimeClassification c = classify_regime(reg.eps, reg.h, reg.eta, 2.0);
        CHECK(c.classification == RegimeClass::critical);
        CHECK(c.lambda_est == doctest::Approx(1.0).epsilon(1e-12));
    }

    // default s is the admissible midpoint: 5/6 at r = 2
    CHECK(default_eta_exponent(2.0) == doctest::Approx(5.0 / 6.0));

    // an eps too close to 1 with s near 1 gets dropped
    const auto seq2 = regime_sequence(2.0, 1.0, {0.5, 0.125, 0.0625}, 0.99);
    CHECK(seq2.size() < 3);

    // empty admissible set is a configuration error with an explanation
    CHECK_THROWS_AS(regime_sequence(2.0, 1e-9, {0.125}, 5.0 / 6.0), Error);

    // list must be strictly decreasing
    CHECK_THROWS_AS(regime_sequence(2.0, 1.0, {0.125, 0.125}, 5.0 / 6.0), Error);
}

TEST_SUITE_END();
