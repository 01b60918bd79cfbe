/// @file test_geometry.cpp
/// @brief Cell/domain rasterization, dilatations, mask bookkeeping.
#include <doctest.h>

#include <cmath>

#include "porolub/geometry.hpp"

using namespace porolub;

TEST_SUITE_BEGIN("geometry");

namespace {

UnitCell disk_cell(double radius) {
    UnitCell c;
    c.obstacle.kind = ObstacleKind::disk;
    c.obstacle.radius = radius;
    return c;
}

}  // namespace

TEST_CASE("unit cell rasterization: disk fluid fraction") {
    const Grid g = build_unit_cell_grid(disk_cell(0.25), 64);
    const double exact = 1.0 - M_PI / 16.0;
    CHECK(std::fabs(g.fluid_fraction() - exact) <= 2.0 / 64.0);
}

TEST_CASE("unit cell rasterization: aligned square is exact") {
    UnitCell c;
    c.obstacle.kind = ObstacleKind::rectangle;
    c.obstacle.hx = c.obstacle.hy = 0.25;
    const Grid g = build_unit_cell_grid(c, 64);
    CHECK(g.fluid_fraction() == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("unit cell rasterization error decreases linearly in 1/n") {
    const double exact = 1.0 - M_PI / 16.0;
    double prev_err = 1.0;
    for (int n : {32, 64, 128}) {
        const Grid g = build_unit_cell_grid(disk_cell(0.25), n);
        const double err = std::fabs(g.fluid_fraction() - exact);
        CHECK(err <= 2.0 / n);
        CHECK(err <= prev_err + 1e-12);
        prev_err = err;
    }
}

TEST_CASE("invalid obstacles are rejected") {
    CHECK_THROWS_AS(build_unit_cell_grid(disk_cell(0.0), 64), Error);    // empty
    CHECK_THROWS_AS(build_unit_cell_grid(disk_cell(0.55), 64), Error);   // touches boundary
    CHECK_THROWS_AS(build_unit_cell_grid(disk_cell(0.004), 64), Error);  // rasterizes empty
    CHECK_THROWS_AS(build_unit_cell_grid(disk_cell(0.25), 8), Error);    // n too small
}

TEST_CASE("perforated domain: counting example") {
    PerforatedDomainSpec spec;
    spec.eps = 0.125;
    spec.h = 0.5;
    spec.eta = 0.25;
    spec.obstacle.kind = ObstacleKind::disk;
    spec.obstacle.radius = 0.25;
    const PerforatedGrid pg = build_perforated_domain(spec, 16);

    CHECK(pg.cells_along_omega == 8);
    CHECK(pg.grid.nx == 128);
    CHECK(pg.porous_rows == 64);   // 4 rows of eps-cells, 16 cells each
    CHECK(pg.film_rows == 32);     // eta / d = 0.25 * 128
    CHECK(pg.j_sigma == 32);
    CHECK(pg.h_realized == doctest::Approx(0.5));

    // obstacle mask count equals K_eps * rows * per-cell count (translation
    // invariance of the microstructure)
    const Grid cell = build_unit_cell_grid(UnitCell{spec.obstacle}, 16);
    int per_cell = 0;
    for (auto s : cell.solid) per_cell += s;
    int total = 0;
    for (auto s : pg.grid.solid) total += s;
    CHECK(total == 8 * 4 * per_cell);
}

TEST_CASE("perforated domain: interior eps-cell mask equals the unit-cell mask") {
    PerforatedDomainSpec spec;
    spec.eps = 0.25;
    spec.h = 0.5;
    spec.eta = 0.3;
    spec.obstacle.kind = ObstacleKind::disk;
    spec.obstacle.radius = 0.3;
    const PerforatedGrid pg = build_perforated_domain(spec, 16);
    const Grid cell = build_unit_cell_grid(UnitCell{spec.obstacle}, 16);

    // second eps-cell along omega, first row of the band
    const int i0 = 16, j0 = pg.j_sigma;
    for (int j = 0; j < 16; ++j)
        for (int i = 0; i < 16; ++i)
            CHECK(pg.grid.is_solid(i0 + i, j0 + j) == cell.is_solid(i, j));
}

TEST_CASE("perforated domain: regime violations") {
    PerforatedDomainSpec spec;
    spec.eps = 0.25;
    spec.h = 0.125;  // h < eps
    spec.eta = 0.3;
    spec.obstacle.kind = ObstacleKind::disk;
    spec.obstacle.radius = 0.25;
    CHECK_THROWS_AS(build_perforated_domain(spec, 16), Error);

    spec.h = 0.5;
    spec.eta = 0.2;  // eta < eps
    CHECK_THROWS_AS(build_perforated_domain(spec, 16), Error);

    spec.eta = 0.3;
    spec.eps = 0.3;  // 1/eps not integral
    spec.h = 0.6;
    spec.eta = 0.4;
    CHECK_THROWS_AS(build_perforated_domain(spec, 16), Error);
}

TEST_CASE("resource cap") {
    PerforatedDomainSpec spec;
    spec.eps = 0.125;
    spec.h = 0.5;
    spec.eta = 0.25;
    spec.obstacle.kind = ObstacleKind::disk;
    spec.obstacle.radius = 0.25;
    CHECK_THROWS_AS(build_perforated_domain(spec, 16, 1000), Error);
}

TEST_CASE("dilatations preserve values and compose to the identity") {
    PerforatedDomainSpec spec;
    spec.eps = 0.125;
    spec.h = 0.25;
    spec.eta = 0.25;
    spec.obstacle.kind = ObstacleKind::disk;
    spec.obstacle.radius = 0.25;
    const PerforatedGrid pg = build_perforated_domain(spec, 16);
    const Grid& g = pg.grid;

    SUBCASE("constant field stays constant") {
        std::vector<double> field(g.cell_count(), 3.5);
        const ScalarField z = rescale_field(pg, field, Medium::porous, spec.eta);
        for (int c = 0; c < z.grid.cell_count(); ++c) CHECK(z.values[c] == 3.5);
    }

    SUBCASE("field x2 becomes h * z2 on the porous band") {
        std::vector<double> field(g.cell_count(), 0.0);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) field[g.cid(i, j)] = g.yc(j);
        const ScalarField z = rescale_field(pg, field, Medium::porous, spec.eta);
        for (int j = 0; j < z.grid.ny; ++j)
            for (int i = 0; i < z.grid.nx; ++i)
                CHECK(z.values[z.grid.cid(i, j)] ==
                      doctest::Approx(pg.h_realized * z.grid.yc(j)).epsilon(1e-12));
    }

    SUBCASE("L^r norm rescales by h^{1/r}") {
        // direct quadrature on both sides of the change of variables
        std::vector<double> field(g.cell_count(), 0.0);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                field[g.cid(i, j)] = std::sin(5.0 * g.xc(i)) + g.yc(j);
        const double r = 2.5;
        double phys = 0.0;
        for (int j = pg.j_sigma; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (!g.is_solid(i, j))
                    phys += std::pow(std::fabs(field[g.cid(i, j)]), r) * g.dx * g.dy;
        const ScalarField z = rescale_field(pg, field, Medium::porous, spec.eta);
        double resc = 0.0;
        for (int j = 0; j < z.grid.ny; ++j)
            for (int i = 0; i < z.grid.nx; ++i)
                if (!z.grid.is_solid(i, j))
                    resc += std::pow(std::fabs(z.values[z.grid.cid(i, j)]), r) * z.grid.dx *
                            z.grid.dy;
        CHECK(std::pow(phys, 1.0 / r) ==
              doctest::Approx(std::pow(pg.h_realized, 1.0 / r) * std::pow(resc, 1.0 / r))
                  .epsilon(1e-12));
    }

    SUBCASE("rescale then inverse-rescale is the identity") {
        std::vector<double> field(g.cell_count(), 0.0);
        for (int c = 0; c < g.cell_count(); ++c) field[c] = std::cos(0.37 * c);
        for (Medium m : {Medium::porous, Medium::film}) {
            const ScalarField z = rescale_field(pg, field, m, spec.eta);
            const std::vector<double> back = inverse_rescale_field(pg, z, m);
            const int j0 = m == Medium::porous ? pg.j_sigma : 0;
            const int j1 = m == Medium::porous ? g.ny : pg.j_sigma;
            for (int j = j0; j < j1; ++j)
                for (int i = 0; i < g.nx; ++i)
                    CHECK(back[g.cid(i, j)] == field[g.cid(i, j)]);
        }
    }
}

TEST_CASE("film profile bounds") {
    CHECK(FilmProfile::constant(1.0).lower_bound() == doctest::Approx(1.0));
    const FilmProfile cos = FilmProfile::cosine(1.0, 0.25);
    CHECK(cos.lower_bound() == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(cos.upper_bound() == doctest::Approx(1.25).epsilon(1e-6));
    CHECK_THROWS_AS(FilmProfile::cosine(1.0, 1.5), Error);  // dips below zero
    CHECK_THROWS_AS(FilmProfile::constant(-1.0), Error);
}

TEST_CASE("mask text export") {
    const Grid g = build_unit_cell_grid(disk_cell(0.25), 16);
    const std::string text = g.mask_text();
    CHECK(text.size() == 16u * 17u);
    std::size_t ones = 0;
    for (char ch : text) ones += (ch == '1');
    CHECK(ones == static_cast<std::size_t>(g.cell_count() - g.fluid_cell_count()));
}

TEST_CASE("fluid connectivity") {
    Grid g = build_unit_cell_grid(disk_cell(0.25), 32);
    CHECK(g.fluid_connected());
    // wall of solid across the band disconnects it
    Grid blocked = g;
    blocked.periodic_y = false;
    for (int i = 0; i < blocked.nx; ++i) blocked.solid[blocked.cid(i, 16)] = 1;
    CHECK(!blocked.fluid_connected());
}

TEST_SUITE_END();
