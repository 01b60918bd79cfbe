/// @file grid.hpp
/// @brief MAC staggered grid with a solid mask.
///
/// Staggering convention: u1 on vertical faces, u2 on horizontal faces,
/// pressure at cell centers.  Grids are immutable after construction and
/// safely shareable across concurrent solver instances.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "porolub/error.hpp"

namespace porolub {

struct Grid {
    int nx = 0, ny = 0;          ///< cell counts
    double dx = 0.0, dy = 0.0;   ///< spacings
    double x0 = 0.0, y0 = 0.0;   ///< lower-left corner of the box
    bool periodic_x = false;
    bool periodic_y = false;
    std::vector<std::uint8_t> solid;  ///< nx*ny, 1 = solid (inside obstacle / outside fluid)

    int cell_count() const { return nx * ny; }
    int cid(int i, int j) const { return j * nx + i; }

    double xc(int i) const { return x0 + (i + 0.5) * dx; }  ///< cell-center x
    double yc(int j) const { return y0 + (j + 0.5) * dy; }  ///< cell-center y
    double xf(int i) const { return x0 + i * dx; }          ///< face/corner x
    double yf(int j) const { return y0 + j * dy; }          ///< face/corner y

    bool is_solid(int i, int j) const { return solid[cid(i, j)] != 0; }

    /// Wrapped cell solidity; cells outside a non-periodic extent count as
    /// "outside" and the query returns true (no fluid there).
    bool solid_at(int i, int j) const {
        if (periodic_x) i = (i % nx + nx) % nx;
        if (periodic_y) j = (j % ny + ny) % ny;
        if (i < 0 || i >= nx || j < 0 || j >= ny) return true;
        return is_solid(i, j);
    }

    int fluid_cell_count() const {
        int n = 0;
        for (auto s : solid) n += (s == 0);
        return n;
    }

    double fluid_fraction() const {
        return static_cast<double>(fluid_cell_count()) / static_cast<double>(cell_count());
    }

    /// u1 column count (vertical-face x-indices); equal to nx when periodic.
    int nxu() const { return periodic_x ? nx : nx + 1; }
    /// u2 row count (horizontal-face y-indices); equal to ny when periodic.
    int nyv() const { return periodic_y ? ny : ny + 1; }

    int u1_count() const { return nxu() * ny; }
    int u2_count() const { return nx * nyv(); }
    int u1_id(int i, int j) const { return j * nxu() + i; }
    int u2_id(int i, int j) const { return j * nx + i; }

    /// True when all fluid cells form a single face-connected component.
    bool fluid_connected() const;

    /// Portable text mask: one row per line, '0' fluid / '1' solid,
    /// top row first.
    std::string mask_text() const;
};

/// Velocity field pair on the staggered grid.
struct StaggeredField {
    std::vector<double> u1;  ///< size grid.u1_count()
    std::vector<double> u2;  ///< size grid.u2_count()

    static StaggeredField zeros(const Grid& g) {
        StaggeredField f;
        f.u1.assign(g.u1_count(), 0.0);
        f.u2.assign(g.u2_count(), 0.0);
        return f;
    }
};

} // namespace porolub
