/// @file test_stokes.cpp
/// @brief Power-law Stokes kernel: analytic channels, residuals, energy,
///        symmetry, scaling.
#include <doctest.h>

#include <cmath>
#include <random>

#include "porolub/stokes.hpp"

using namespace porolub;

TEST_SUITE_BEGIN("stokes");

namespace {

Grid channel(int nx, int ny, double height = 1.0) {
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.dx = 1.0 / nx;
    g.dy = height / ny;
    g.x0 = 0.0;
    g.y0 = 0.0;
    g.periodic_x = true;
    g.periodic_y = false;
    g.solid.assign(g.cell_count(), 0);
    return g;
}

// closed-form power-law Poiseuille: the transverse balance
//   A_r(u') = -2^{r/2} (f1/nu) (y - H/2)
// integrates to u(y) = A_{r'}(2^{r/2} f1/nu) ((H/2)^{r'} - |y - H/2|^{r'})/r'
double powerlaw_profile(double y, double r, double nu, double f1, double H = 1.0) {
    const double rp = conjugate_exponent(r);
    const double amp = power_map(std::pow(2.0, 0.5 * r) * f1 / nu, rp);
    return amp * (std::pow(0.5 * H, rp) - std::pow(std::fabs(y - 0.5 * H), rp)) / rp;
}

}  // namespace

TEST_CASE("newtonian poiseuille is exact on the grid") {
    StokesProblem pb =
        StokesProblem::paper(channel(8, 64), FluidModel(2.0, 1.0), [](double) { return 1.0; });
    const StokesSolution sol = solve_stokes(pb);
    const Grid& g = pb.grid;

    double maxerr = 0.0, maxp = 0.0, umax = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.yc(j);
        for (int i = 0; i < g.nxu(); ++i) {
            const double u = sol.velocity.u1[g.u1_id(i, j)];
            maxerr = std::max(maxerr, std::fabs(u - y * (1.0 - y)));
            umax = std::max(umax, u);
        }
    }
    for (double p : sol.pressure) maxp = std::max(maxp, std::fabs(p));
    CHECK(maxerr <= 1e-8);
    CHECK(umax == doctest::Approx(0.25).epsilon(1e-6));  // midline maximum
    CHECK(maxp <= 1e-8);
    CHECK(sol.div_max <= 1e-10);
}

TEST_CASE("homogeneous problem returns exact zeros") {
    StokesProblem pb =
        StokesProblem::paper(channel(8, 16), FluidModel(2.0, 1.0), [](double) { return 0.0; });
    const StokesSolution sol = solve_stokes(pb);
    for (double v : sol.velocity.u1) CHECK(v == 0.0);
    for (double v : sol.velocity.u2) CHECK(v == 0.0);
    for (double v : sol.pressure) CHECK(v == 0.0);
}

TEST_CASE("power-law channel r=3 matches the closed form") {
    StokesProblem pb =
        StokesProblem::paper(channel(4, 128), FluidModel(3.0, 1.0), [](double) { return 1.0; });
    const StokesSolution sol = solve_stokes(pb);
    const Grid& g = pb.grid;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double exact = powerlaw_profile(g.yc(j), 3.0, 1.0, 1.0);
        const double got = sol.velocity.u1[g.u1_id(0, j)];
        num += (got - exact) * (got - exact);
        den += exact * exact;
    }
    CHECK(std::sqrt(num / den) <= 1e-2);
    CHECK(sol.momentum_rel <= 1e-8);
    CHECK(sol.div_max <= 1e-10);
}

TEST_CASE("shear-thinning channel r=1.5 converges") {
    StokesProblem pb =
        StokesProblem::paper(channel(4, 64), FluidModel(1.5, 1.0), [](double) { return 1.0; });
    const StokesSolution sol = solve_stokes(pb);
    const Grid& g = pb.grid;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        const double exact = powerlaw_profile(g.yc(j), 1.5, 1.0, 1.0);
        const double got = sol.velocity.u1[g.u1_id(0, j)];
        num += (got - exact) * (got - exact);
        den += exact * exact;
    }
    CHECK(std::sqrt(num / den) <= 1e-2);
}

TEST_CASE("r < 2 without regularization is rejected") {
    StokesProblem pb =
        StokesProblem::paper(channel(4, 16), FluidModel(2.0, 1.0), [](double) { return 1.0; });
    pb.model.r = 1.5;
    pb.model.delta = 0.0;
    CHECK_THROWS_AS(solve_stokes(pb), Error);
}

TEST_CASE("non-convergence carries the residual history") {
    StokesProblem pb =
        StokesProblem::paper(channel(4, 32), FluidModel(3.0, 1.0), [](double) { return 1.0; });
    SolverConfig cfg;
    cfg.max_picard = 2;
    try {
        solve_stokes(pb, cfg);
        FAIL("expected a convergence error");
    } catch (const Error& e) {
        CHECK(e.category() == ErrorCategory::convergence);
        CHECK(std::string(e.what()).find("history") != std::string::npos);
    }
}

TEST_CASE("residual evaluation") {
    StokesProblem pb =
        StokesProblem::paper(channel(8, 32), FluidModel(2.0, 1.0), [](double) { return 1.0; });
    const Grid& g = pb.grid;

    SUBCASE("zero velocity against nonzero force has relative residual 1") {
        const StaggeredField zero = StaggeredField::zeros(g);
        const std::vector<double> pzero(g.cell_count(), 0.0);
        const ResidualReport rep = residuals(pb, zero, pzero);
        CHECK(rep.momentum_rel == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.div_max == 0.0);
    }

    SUBCASE("converged solution passes, perturbation raises the residual") {
        const StokesSolution sol = solve_stokes(pb);
        const ResidualReport rep = residuals(pb, sol.velocity, sol.pressure);
        CHECK(rep.momentum_rel <= 1e-8);
        CHECK(rep.div_max <= 1e-10);

        StaggeredField bumped = sol.velocity;
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> dist(-1e-3, 1e-3);
        for (double& v : bumped.u1) v += dist(rng);
        const ResidualReport worse = residuals(pb, bumped, sol.pressure);
        CHECK(worse.momentum_rel > 10.0 * rep.momentum_rel);
    }
}

TEST_CASE("energy functional") {
    StokesProblem pb =
        StokesProblem::paper(channel(8, 64), FluidModel(2.0, 1.0), [](double) { return 1.0; });
    const Grid& g = pb.grid;

    SUBCASE("zero field has zero energy") {
        CHECK(energy(pb, StaggeredField::zeros(g)) == 0.0);
    }

    SUBCASE("virtual work at the optimum: J = -(1/2) int f.u for r = 2") {
        // quadrature oracle from the analytic profile: int f u = int y(1-y) = 1/6
        const StokesSolution sol = solve_stokes(pb);
        CHECK(energy(pb, sol.velocity) == doctest::Approx(-1.0 / 12.0).epsilon(1e-3));
        const double fp = force_pairing(pb, sol.velocity);
        CHECK(energy(pb, sol.velocity) == doctest::Approx(-0.5 * fp).epsilon(1e-3));
    }

    SUBCASE("converged solution beats divergence-free perturbations") {
        const StokesSolution sol = solve_stokes(pb);
        const double J0 = energy(pb, sol.velocity);
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> dist(-0.05, 0.05);
        for (int trial = 0; trial < 10; ++trial) {
            // divergence-free perturbation from a random interior stream function
            std::vector<double> psi(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0);
            for (int j = 2; j < g.ny - 1; ++j)
                for (int i = 0; i < g.nx; ++i) psi[j * g.nx + i] = dist(rng);
            StaggeredField pert = sol.velocity;
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nxu(); ++i)
                    pert.u1[g.u1_id(i, j)] +=
                        (psi[(j + 1) * g.nx + i % g.nx] - psi[j * g.nx + i % g.nx]) / g.dy;
            for (int j = 1; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    pert.u2[g.u2_id(i, j)] -=
                        (psi[j * g.nx + (i + 1) % g.nx] - psi[j * g.nx + i]) / g.dx;
            const ResidualReport rep = residuals(pb, pert, sol.pressure);
            CHECK(rep.div_max <= 1e-10);  // curl of a stream function
            CHECK(energy(pb, pert) > J0);
        }
    }
}

TEST_CASE("energy is non-increasing across accepted Picard steps") {
    for (double r : {1.5, 3.0}) {
        StokesProblem pb =
            StokesProblem::paper(channel(4, 48), FluidModel(r, 1.0), [](double) { return 1.0; });
        const StokesSolution sol = solve_stokes(pb);
        for (std::size_t k = 1; k < sol.history.size(); ++k)
            CHECK(sol.history[k].energy <=
                  sol.history[k - 1].energy + 1e-9 * std::fabs(sol.history[k - 1].energy));
    }
}

TEST_CASE("test-function identity <S(u), D u> = <f, u>") {
    for (double r : {1.5, 2.0, 3.0}) {
        StokesProblem pb =
            StokesProblem::paper(channel(4, 48), FluidModel(r, 1.0), [](double) { return 1.0; });
        const StokesSolution sol = solve_stokes(pb);
        const double vp = viscous_pairing(pb, sol.velocity);
        const double fp = force_pairing(pb, sol.velocity);
        CHECK(std::fabs(vp - fp) <= 1e-6 * std::fabs(fp));
    }
}

TEST_CASE("mirroring the geometry and forcing mirrors the solution") {
    // obstacle off-center in y; forcing in x only
    Grid g = channel(16, 32);
    for (int j = 8; j < 12; ++j)
        for (int i = 6; i < 10; ++i) g.solid[g.cid(i, j)] = 1;
    Grid gm = g;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            gm.solid[gm.cid(i, j)] = g.solid[g.cid(i, g.ny - 1 - j)];

    StokesProblem pb = StokesProblem::paper(g, FluidModel(2.0, 1.0), [](double) { return 1.0; });
    StokesProblem pbm =
        StokesProblem::paper(gm, FluidModel(2.0, 1.0), [](double) { return 1.0; });
    const StokesSolution s1 = solve_stokes(pb);
    const StokesSolution s2 = solve_stokes(pbm);

    double maxdiff = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nxu(); ++i)
            maxdiff = std::max(maxdiff, std::fabs(s1.velocity.u1[g.u1_id(i, j)] -
                                                  s2.velocity.u1[g.u1_id(i, g.ny - 1 - j)]));
    CHECK(maxdiff <= 1e-10);
}

TEST_CASE("newtonian solution scales inversely with the consistency") {
    Grid g = channel(8, 32);
    for (int j = 12; j < 20; ++j)
        for (int i = 2; i < 6; ++i) g.solid[g.cid(i, j)] = 1;
    StokesProblem pb1 = StokesProblem::paper(g, FluidModel(2.0, 1.0), [](double) { return 1.0; });
    StokesProblem pb2 = StokesProblem::paper(g, FluidModel(2.0, 2.0), [](double) { return 1.0; });
    const StokesSolution s1 = solve_stokes(pb1);
    const StokesSolution s2 = solve_stokes(pb2);
    for (int k = 0; k < g.u1_count(); ++k)
        CHECK(std::fabs(s2.velocity.u1[k] - 0.5 * s1.velocity.u1[k]) <= 1e-10);
}

TEST_CASE("velocity vanishes on masked and boundary faces") {
    Grid g = channel(8, 24);
    for (int j = 10; j < 14; ++j)
        for (int i = 3; i < 6; ++i) g.solid[g.cid(i, j)] = 1;
    StokesProblem pb = StokesProblem::paper(g, FluidModel(2.0, 1.0), [](double) { return 1.0; });
    const StokesSolution sol = solve_stokes(pb);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nxu(); ++i) {
            const int il = (i - 1 + g.nx) % g.nx;
            if (g.is_solid(il, j) || g.is_solid(i % g.nx, j))
                CHECK(sol.velocity.u1[g.u1_id(i, j)] == 0.0);
        }
    for (int i = 0; i < g.nx; ++i) {
        CHECK(sol.velocity.u2[g.u2_id(i, 0)] == 0.0);
        CHECK(sol.velocity.u2[g.u2_id(i, g.ny)] == 0.0);
    }
}

TEST_CASE("determinism: identical runs produce identical fields") {
    StokesProblem pb =
        StokesProblem::paper(channel(4, 32), FluidModel(3.0, 1.0), [](double) { return 1.0; });
    const StokesSolution a = solve_stokes(pb);
    const StokesSolution b = solve_stokes(pb);
    for (int k = 0; k < pb.grid.u1_count(); ++k) CHECK(a.velocity.u1[k] == b.velocity.u1[k]);
    for (int k = 0; k < pb.grid.cell_count(); ++k) CHECK(a.pressure[k] == b.pressure[k]);
}

TEST_CASE("csv export shape") {
    StokesProblem pb =
        StokesProblem::paper(channel(4, 8), FluidModel(2.0, 1.0), [](double) { return 1.0; });
    const StokesSolution sol = solve_stokes(pb);
    const std::string csv = solution_csv(pb, sol);
    CHECK(csv.rfind("x1,x2,u1,u2,p\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) lines += (c == '\n');
    CHECK(lines == 1u + 4u * 8u);
}

TEST_SUITE_END();
