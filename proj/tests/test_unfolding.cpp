/// @file test_unfolding.cpp
/// @brief Block re-indexing, exact norm identities, cell averages.
#include <doctest.h>

#include <cmath>
#include <random>

#include "porolub/unfolding.hpp"

using namespace porolub;

TEST_SUITE_BEGIN("unfolding");

namespace {

// aligned rescaled porous band: K1 blocks of n1 across omega, K2 blocks of n2
// across (0,1); eps = 1/K1, h = K2 * eps
ScalarField make_band(int K1, int K2, int n1, int n2, unsigned seed, bool masked) {
    ScalarField f;
    Grid& g = f.grid;
    g.nx = K1 * n1;
    g.ny = K2 * n2;
    const double eps = 1.0 / K1;
    g.dx = eps / n1;
    g.dy = 1.0 / g.ny;
    g.x0 = -0.5;
    g.y0 = 0.0;
    g.solid.assign(g.cell_count(), 0);
    if (masked) {
        // centered square obstacle replicated per block
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int li = i % n1, lj = j % n2;
                if (li >= n1 / 4 && li < 3 * n1 / 4 && lj >= n2 / 4 && lj < 3 * n2 / 4)
                    g.solid[g.cid(i, j)] = 1;
            }
    }
    f.values.assign(g.cell_count(), 0.0);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int c = 0; c < g.cell_count(); ++c) f.values[c] = dist(rng);
    return f;
}

double band_eps(const ScalarField& f, int K1) { (void)f; return 1.0 / K1; }

}  // namespace

TEST_CASE("unfold of a constant is constant per block") {
    ScalarField f = make_band(4, 2, 8, 8, 1, false);
    for (double& v : f.values) v = 2.5;
    const double eps = band_eps(f, 4), h = 2 * eps;
    const UnfoldedField u = unfold(f, eps, h);
    CHECK(u.K1 == 4);
    CHECK(u.K2 == 2);
    for (double v : u.values) CHECK(v == 2.5);
}

TEST_CASE("unfold of z1 gives eps*k1 + eps*y1 per block") {
    ScalarField f = make_band(4, 2, 8, 8, 2, false);
    const Grid& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.values[g.cid(i, j)] = g.xc(i);
    const double eps = 0.25, h = 0.5;
    const UnfoldedField u = unfold(f, eps, h);
    for (int k1 = 0; k1 < u.K1; ++k1)
        for (int iy = 0; iy < u.n1; ++iy) {
            // block origin -1/2 + eps*k1; micro coordinate center (iy+1/2)/n1
            const double expect = -0.5 + eps * k1 + eps * (iy + 0.5) / u.n1;
            CHECK(u.values[u.idx(k1, 0, iy, 0)] == doctest::Approx(expect).epsilon(1e-14));
        }
}

TEST_CASE("unfold then refold is the identity") {
    const ScalarField f = make_band(8, 4, 6, 10, 3, true);
    const double eps = 1.0 / 8, h = 4 * eps;
    const UnfoldedField u = unfold(f, eps, h);
    const ScalarField back = refold(u, f.grid);
    for (int c = 0; c < f.grid.cell_count(); ++c) {
        if (f.grid.solid[c])
            CHECK(back.values[c] == 0.0);  // zero extension
        else
            CHECK(back.values[c] == f.values[c]);
    }
}

TEST_CASE("non-aligned grids are refused") {
    ScalarField f = make_band(4, 2, 8, 8, 4, false);
    CHECK_THROWS_AS(unfold(f, 0.3, 0.6), Error);    // 1/eps not integral
    CHECK_THROWS_AS(unfold(f, 0.25, 0.75), Error);  // (eps/h)/dy not integral
    f.grid.x0 = 0.0;                                // wrong band placement
    CHECK_THROWS_AS(unfold(f, 0.25, 0.5), Error);
}

TEST_CASE("norm identities are exact") {
    for (unsigned seed : {10u, 11u, 12u, 13u, 14u}) {
        for (bool masked : {false, true}) {
            const ScalarField f = make_band(4, 3, 8, 8, seed, masked);
            const double eps = 0.25, h = 0.75;
            for (double s : {1.5, 2.0, 3.0}) {
                const NormIdentityReport rep = verify_norm_identities(f, s, eps, h);
                CHECK(std::fabs(rep.value_ratio - 1.0) <= 1e-12);
                CHECK(std::fabs(rep.dy1_ratio - 1.0) <= 1e-12);
                CHECK(std::fabs(rep.dy2_ratio - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("constant field reports exact-zero derivative matches") {
    ScalarField f = make_band(4, 2, 8, 8, 5, false);
    for (double& v : f.values) v = 1.0;
    const NormIdentityReport rep = verify_norm_identities(f, 2.0, 0.25, 0.5);
    CHECK(rep.value_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.dy1_ratio == 1.0);
    CHECK(rep.dy2_ratio == 1.0);
}

TEST_CASE("linear field z1: dy1 ratio exact") {
    ScalarField f = make_band(4, 2, 8, 8, 6, false);
    const Grid& g = f.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.values[g.cid(i, j)] = g.xc(i);
    const NormIdentityReport rep = verify_norm_identities(f, 2.0, 0.25, 0.5);
    CHECK(std::fabs(rep.dy1_ratio - 1.0) <= 1e-13);
}

TEST_CASE("cell average") {
    SUBCASE("constant on the fluid region gives c |Y_f| per block") {
        ScalarField f = make_band(4, 2, 8, 8, 7, true);
        for (double& v : f.values) v = 3.0;
        const UnfoldedField u = unfold(f, 0.25, 0.5);
        const std::vector<double> avg = cell_average(u);
        // the replicated square obstacle fills 1/4 of each block
        for (double v : avg) CHECK(v == doctest::Approx(3.0 * 0.75).epsilon(1e-14));
    }

    SUBCASE("odd-in-y2 field with symmetric mask averages to zero") {
        ScalarField f = make_band(4, 2, 8, 8, 8, true);
        const Grid& g = f.grid;
        const int n2 = 8;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int lj = j % n2;
                f.values[g.cid(i, j)] = (lj + 0.5) / n2 - 0.5;  // odd about block midline
            }
        const std::vector<double> avg = cell_average(unfold(f, 0.25, 0.5));
        for (double v : avg) CHECK(std::fabs(v) <= 1e-14);
    }

    SUBCASE("random field equals the brute-force block sum") {
        const ScalarField f = make_band(4, 2, 8, 8, 9, true);
        const UnfoldedField u = unfold(f, 0.25, 0.5);
        const std::vector<double> avg = cell_average(u);
        const Grid& g = f.grid;
        for (int k2 = 0; k2 < 2; ++k2)
            for (int k1 = 0; k1 < 4; ++k1) {
                double acc = 0.0;
                for (int j = 0; j < 8; ++j)
                    for (int i = 0; i < 8; ++i) {
                        const int ci = k1 * 8 + i, cj = k2 * 8 + j;
                        if (!g.is_solid(ci, cj)) acc += f.values[g.cid(ci, cj)] / 64.0;
                    }
                CHECK(avg[k2 * 4 + k1] == doctest::Approx(acc).epsilon(1e-14));
            }
    }
}

TEST_CASE("global integral identity") {
    const ScalarField f = make_band(8, 4, 8, 8, 15, true);
    const double eps = 0.125, h = 0.5;
    const Grid& g = f.grid;
    double src = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!g.is_solid(i, j)) src += f.values[g.cid(i, j)] * g.dx * g.dy;

    const UnfoldedField u = unfold(f, eps, h);
    const std::vector<double> avg = cell_average(u);
    double hat = 0.0;
    const double block_measure = eps * (eps / h);
    for (double v : avg) hat += v * block_measure;
    CHECK(hat == doctest::Approx(src).epsilon(1e-12));
}

TEST_SUITE_END();
