/// @file test_rheology.cpp
/// @brief Power-map algebra, conjugate exponents, regularized viscosity.
#include <doctest.h>

#include <cmath>
#include <random>

#include "porolub/rheology.hpp"

using namespace porolub;

TEST_SUITE_BEGIN("rheology");

TEST_CASE("conjugate exponent") {
    CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
    CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
    CHECK(conjugate_exponent(1.5) == doctest::Approx(3.0));
    CHECK_THROWS_AS(conjugate_exponent(1.0), Error);
    CHECK_THROWS_AS(conjugate_exponent(0.5), Error);

    // Hoelder pairing 1/r + 1/r' = 1 to ulp scale
    for (double r : {1.2, 1.5, 2.0, 2.7, 3.0, 4.0, 10.0}) {
        const double rp = conjugate_exponent(r);
        CHECK(std::fabs(1.0 / r + 1.0 / rp - 1.0) < 1e-15);
    }
}

TEST_CASE("scalar power map") {
    CHECK(power_map(-3.0, 2.0) == -3.0);
    CHECK(power_map(2.0, 3.0) == doctest::Approx(4.0));
    CHECK(power_map(4.0, 1.5) == doctest::Approx(2.0));
    CHECK(power_map(0.0, 1.5) == 0.0);  // removable singularity
    CHECK(power_map(0.0, 3.0) == 0.0);
    CHECK_THROWS_AS(power_map(1.0, 1.0), Error);
}

TEST_CASE("inverse pair A_r o A_{r'} = id") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (double r : {1.2, 1.5, 2.0, 3.0, 4.0}) {
        const double rp = conjugate_exponent(r);
        for (int k = 0; k < 200; ++k) {
            const double x = dist(rng);
            const double y = power_map(power_map(x, r), rp);
            CHECK(std::fabs(y - x) <= 1e-12 * std::max(1.0, std::fabs(x)));
        }
    }
}

TEST_CASE("strict monotonicity of the power map") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::uniform_real_distribution<double> pd(1.1, 4.0);
    for (int k = 0; k < 10000; ++k) {
        const double u = dist(rng);
        double v = dist(rng);
        if (u == v) v += 1.0;
        const double p = pd(rng);
        CHECK((power_map(u, p) - power_map(v, p)) * (u - v) > 0.0);
    }
}

TEST_CASE("homogeneity power_map(c x) = power_map(c) power_map(x)") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (double p : {1.5, 2.0, 2.5, 3.0}) {
        for (int k = 0; k < 100; ++k) {
            const double c = dist(rng), x = dist(rng);
            const double lhs = power_map(c * x, p);
            const double rhs = power_map(c, p) * power_map(x, p);
            CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(lhs)));
        }
    }
}

TEST_CASE("tensor power map") {
    const SymTensor2 eye{1.0, 1.0, 0.0};
    const SymTensor2 r2 = tensor_power_map(eye, 2.0);
    CHECK(r2.a11 == 1.0);
    CHECK(r2.a22 == 1.0);
    CHECK(r2.a12 == 0.0);

    const SymTensor2 zero = tensor_power_map(SymTensor2{}, 1.5);
    CHECK(zero.a11 == 0.0);
    CHECK(zero.a22 == 0.0);
    CHECK(zero.a12 == 0.0);

    // diag(3,4): |xi| = 5, so r = 3 scales by 5
    const SymTensor2 d = tensor_power_map(SymTensor2{3.0, 4.0, 0.0}, 3.0);
    CHECK(d.a11 == doctest::Approx(15.0));
    CHECK(d.a22 == doctest::Approx(20.0));

    CHECK_THROWS_AS(tensor_power_map(1.0, 2.0, 2.5, 1.0, 2.0), Error);

    // r = 2 is the identity on random symmetric tensors, exactly
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int k = 0; k < 50; ++k) {
        const SymTensor2 t{dist(rng), dist(rng), dist(rng)};
        const SymTensor2 s = tensor_power_map(t, 2.0);
        CHECK(s.a11 == t.a11);
        CHECK(s.a22 == t.a22);
        CHECK(s.a12 == t.a12);
    }
}

TEST_CASE("fluid model invariants and defaults") {
    CHECK_THROWS_WITH_AS(FluidModel(0.9, 1.0), "flow_index must exceed 1", Error);
    CHECK_THROWS_AS(FluidModel(2.0, 0.0), Error);
    CHECK(FluidModel(1.5, 1.0).delta == doctest::Approx(1e-8));
    CHECK(FluidModel(2.0, 1.0).delta == 0.0);
    CHECK(FluidModel(3.0, 1.0).delta == 0.0);
    CHECK(FluidModel(3.0, 1.0, 1e-6).delta == doctest::Approx(1e-6));
}

TEST_CASE("regularized viscosity") {
    CHECK(regularized_viscosity(4.0, FluidModel(2.0, 1.0, 0.0)) == doctest::Approx(1.0));
    CHECK(regularized_viscosity(4.0, FluidModel(3.0, 1.0, 0.0)) == doctest::Approx(2.0));
    CHECK(regularized_viscosity(0.0, FluidModel(1.5, 1.0, 1e-8)) == doctest::Approx(1e4));
    CHECK(regularized_viscosity(0.0, FluidModel(3.0, 1.0, 0.0)) == 0.0);
    CHECK_THROWS_AS(regularized_viscosity(0.0, FluidModel(1.5, 1.0, 0.0)), Error);
    CHECK_THROWS_AS(regularized_viscosity(-1.0, FluidModel(2.0, 1.0)), Error);
}

TEST_SUITE_END();
