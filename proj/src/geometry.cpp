/// @file geometry.cpp
#include "porolub/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace porolub {

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

bool Grid::fluid_connected() const {
    const int n = cell_count();
    int start = -1;
    for (int c = 0; c < n; ++c)
        if (!solid[c]) { start = c; break; }
    if (start < 0) return false;

    std::vector<std::uint8_t> seen(n, 0);
    std::deque<int> queue{start};
    seen[start] = 1;
    int visited = 1;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        const int i = c % nx, j = c / nx;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            int ii = i + di[k], jj = j + dj[k];
            if (periodic_x) ii = (ii + nx) % nx;
            if (periodic_y) jj = (jj + ny) % ny;
            if (ii < 0 || ii >= nx || jj < 0 || jj >= ny) continue;
            const int cc = cid(ii, jj);
            if (!seen[cc] && !solid[cc]) {
                seen[cc] = 1;
                queue.push_back(cc);
                ++visited;
            }
        }
    }
    return visited == fluid_cell_count();
}

std::string Grid::mask_text() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(ny) * (nx + 1));
    for (int j = ny - 1; j >= 0; --j) {
        for (int i = 0; i < nx; ++i) out.push_back(is_solid(i, j) ? '1' : '0');
        out.push_back('\n');
    }
    return out;
}

// ---------------------------------------------------------------------------
// ObstacleShape
// ---------------------------------------------------------------------------

bool ObstacleShape::contains(double x, double y) const {
    switch (kind) {
        case ObstacleKind::disk: {
            const double ddx = x - cx, ddy = y - cy;
            return ddx * ddx + ddy * ddy < radius * radius;
        }
        case ObstacleKind::rectangle:
            return std::fabs(x - cx) < hx && std::fabs(y - cy) < hy;
        case ObstacleKind::polygon: {
            // ray casting
            bool inside = false;
            const std::size_t n = vertices.size();
            for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                const auto& [xi, yi] = vertices[i];
                const auto& [xj, yj] = vertices[j];
                if ((yi > y) != (yj > y) &&
                    x < (xj - xi) * (y - yi) / (yj - yi) + xi)
                    inside = !inside;
            }
            return inside;
        }
    }
    return false;
}

double ObstacleShape::boundary_margin() const {
    double bx0 = 0, bx1 = 0, by0 = 0, by1 = 0;
    switch (kind) {
        case ObstacleKind::disk:
            bx0 = cx - radius; bx1 = cx + radius;
            by0 = cy - radius; by1 = cy + radius;
            break;
        case ObstacleKind::rectangle:
            bx0 = cx - hx; bx1 = cx + hx;
            by0 = cy - hy; by1 = cy + hy;
            break;
        case ObstacleKind::polygon: {
            if (vertices.empty()) return -1.0;
            bx0 = bx1 = vertices[0].first;
            by0 = by1 = vertices[0].second;
            for (const auto& [x, y] : vertices) {
                bx0 = std::min(bx0, x); bx1 = std::max(bx1, x);
                by0 = std::min(by0, y); by1 = std::max(by1, y);
            }
            break;
        }
    }
    return std::min({bx0 + 0.5, 0.5 - bx1, by0 + 0.5, 0.5 - by1});
}

static double polygon_area(const std::vector<std::pair<double, double>>& v) {
    double a = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        a += v[j].first * v[i].second - v[i].first * v[j].second;
    return 0.5 * std::fabs(a);
}

void ObstacleShape::validate() const {
    double area = 0.0;
    switch (kind) {
        case ObstacleKind::disk:
            area = M_PI * radius * radius;
            break;
        case ObstacleKind::rectangle:
            area = 4.0 * hx * hy;
            break;
        case ObstacleKind::polygon:
            if (vertices.size() < 3)
                throw Error(ErrorCategory::geometry, "polygon obstacle needs at least 3 vertices");
            area = polygon_area(vertices);
            break;
    }
    if (!(area > 0.0))
        throw Error(ErrorCategory::geometry, "obstacle must have positive area");
    if (!(boundary_margin() > 0.0))
        throw Error(ErrorCategory::geometry,
                    "obstacle closure must stay strictly inside the reference cell");
}

std::string ObstacleShape::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case ObstacleKind::disk:
            os << "disk:c=" << cx << "," << cy << ":r=" << radius;
            break;
        case ObstacleKind::rectangle:
            os << "rect:c=" << cx << "," << cy << ":h=" << hx << "," << hy;
            break;
        case ObstacleKind::polygon:
            os << "poly:";
            for (const auto& [x, y] : vertices) os << x << "," << y << ";";
            break;
    }
    return os.str();
}

double UnitCell::fluid_fraction_exact() const {
    switch (obstacle.kind) {
        case ObstacleKind::disk:
            return 1.0 - M_PI * obstacle.radius * obstacle.radius;
        case ObstacleKind::rectangle:
            return 1.0 - 4.0 * obstacle.hx * obstacle.hy;
        case ObstacleKind::polygon:
            return 1.0 - polygon_area(obstacle.vertices);
    }
    return 1.0;
}

// ---------------------------------------------------------------------------
// FilmProfile
// ---------------------------------------------------------------------------

void FilmProfile::finalize_bounds() {
    // dense sampling is enough for the smooth registry entries
    const int m = 4097;
    double lo = fn_(-0.5), hi = lo;
    for (int i = 0; i <= m; ++i) {
        const double x = -0.5 + static_cast<double>(i) / m;
        const double v = fn_(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    a_ = lo;
    b_ = hi;
    if (!(a_ > 0.0))
        throw Error(ErrorCategory::geometry, "film profile g must satisfy g >= a > 0");
}

FilmProfile FilmProfile::constant(double value) {
    FilmProfile p;
    p.fn_ = [value](double) { return value; };
    p.desc_ = "constant:" + std::to_string(value);
    p.finalize_bounds();
    return p;
}

FilmProfile FilmProfile::cosine(double mean, double amp, int k) {
    FilmProfile p;
    p.fn_ = [mean, amp, k](double x) { return mean + amp * std::cos(2.0 * M_PI * k * x); };
    p.desc_ = "cosine:" + std::to_string(mean) + ":" + std::to_string(amp) + ":" + std::to_string(k);
    p.finalize_bounds();
    return p;
}

FilmProfile FilmProfile::linear(double g_left, double g_right) {
    FilmProfile p;
    p.fn_ = [g_left, g_right](double x) { return g_left + (g_right - g_left) * (x + 0.5); };
    p.desc_ = "linear:" + std::to_string(g_left) + ":" + std::to_string(g_right);
    p.finalize_bounds();
    return p;
}

FilmProfile FilmProfile::sampled(std::vector<double> values) {
    if (values.size() < 2)
        throw Error(ErrorCategory::geometry, "sampled film profile needs at least 2 values");
    FilmProfile p;
    p.samples_ = std::move(values);
    const auto& s = p.samples_;
    p.fn_ = [&s = p.samples_](double x) {
        const double t = (x + 0.5) * (s.size() - 1);
        const int i = std::clamp(static_cast<int>(std::floor(t)), 0, static_cast<int>(s.size()) - 2);
        const double w = t - i;
        return (1.0 - w) * s[i] + w * s[i + 1];
    };
    p.desc_ = "sampled:" + std::to_string(p.samples_.size());
    p.a_ = *std::min_element(s.begin(), s.end());
    p.b_ = *std::max_element(s.begin(), s.end());
    if (!(p.a_ > 0.0))
        throw Error(ErrorCategory::geometry, "film profile g must satisfy g >= a > 0");
    return p;
}

double FilmProfile::operator()(double x) const { return fn_(x); }

// ---------------------------------------------------------------------------
// Domain builders
// ---------------------------------------------------------------------------

int PerforatedDomainSpec::cell_count_along_omega() const {
    const double k = 1.0 / eps;
    const int ki = static_cast<int>(std::lround(k));
    if (ki < 1 || std::fabs(k - ki) > 1e-9 * k)
        throw Error(ErrorCategory::geometry, "1/eps must be a positive integer so cells tile omega");
    return ki;
}

void PerforatedDomainSpec::validate() const {
    if (!(eps > 0.0 && eps < 1.0) || !(h > 0.0 && h < 1.0) || !(eta > 0.0 && eta < 1.0))
        throw Error(ErrorCategory::regime, "eps, h, eta must all lie in (0,1)");
    if (!(eps < h))
        throw Error(ErrorCategory::regime, "thin-porous-medium regime requires eps < h");
    if (!(eps < eta))
        throw Error(ErrorCategory::regime, "thin-film regime requires eps < eta");
    cell_count_along_omega();
    obstacle.validate();
}

static void rasterize_obstacle(Grid& g, const ObstacleShape& shape) {
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (shape.contains(g.xc(i), g.yc(j))) g.solid[g.cid(i, j)] = 1;
}

Grid build_unit_cell_grid(const UnitCell& cell, int n) {
    if (n < 16)
        throw Error(ErrorCategory::contract, "unit-cell grid resolution must be >= 16");
    cell.obstacle.validate();

    Grid g;
    g.nx = g.ny = n;
    g.dx = g.dy = 1.0 / n;
    g.x0 = g.y0 = -0.5;
    g.periodic_x = g.periodic_y = true;
    g.solid.assign(g.cell_count(), 0);
    rasterize_obstacle(g, cell.obstacle);

    int masked = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            if (g.is_solid(i, j)) {
                ++masked;
                if (i == 0 || i == n - 1 || j == 0 || j == n - 1)
                    throw Error(ErrorCategory::geometry,
                                "obstacle mask reaches the cell boundary ring at this resolution");
            }
    if (masked == 0)
        throw Error(ErrorCategory::geometry,
                    "obstacle rasterizes to an empty mask; the cell problem needs an obstacle");
    return g;
}

PerforatedGrid build_perforated_domain(const PerforatedDomainSpec& spec, int n_per_cell,
                                       std::size_t cell_cap) {
    spec.validate();
    if (n_per_cell < 16)
        throw Error(ErrorCategory::contract, "n_per_cell must be >= 16");

    const int K = spec.cell_count_along_omega();
    const double ratio = spec.h / spec.eps;
    int rows_eps = static_cast<int>(std::lround(ratio));
    if (rows_eps < 1)
        throw Error(ErrorCategory::regime, "porous band holds no full cell row (h/eps < 1)");

    PerforatedGrid pg;
    pg.cells_along_omega = K;
    pg.n_per_cell = n_per_cell;
    pg.h_realized = rows_eps * spec.eps;
    pg.porous_rows = rows_eps * n_per_cell;

    const double d = spec.eps / n_per_cell;

    // film depth per column, rasterized by cell-center membership
    const int nx = K * n_per_cell;
    int film_rows = 0;
    for (int i = 0; i < nx; ++i) {
        const double xci = -0.5 + (i + 0.5) * d;
        const double depth = spec.eta * spec.g(xci);
        const int rows = static_cast<int>(std::floor(depth / d + 0.5));  // centers above -depth
        film_rows = std::max(film_rows, rows);
    }
    if (film_rows < 1)
        throw Error(ErrorCategory::regime, "film rasterizes to zero rows at this resolution");
    pg.film_rows = film_rows;
    pg.j_sigma = film_rows;

    const int ny = film_rows + pg.porous_rows;
    if (static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) > cell_cap)
        throw Error(ErrorCategory::resource,
                    "domain grid of " + std::to_string(static_cast<std::size_t>(nx) * ny) +
                        " cells exceeds the configured cap");

    Grid& g = pg.grid;
    g.nx = nx;
    g.ny = ny;
    g.dx = g.dy = d;
    g.x0 = -0.5;
    g.y0 = -film_rows * d;
    g.periodic_x = g.periodic_y = false;
    g.solid.assign(g.cell_count(), 0);

    // porous band: obstacle per eps-cell, tested in local cell-unit coordinates
    for (int j = pg.j_sigma; j < ny; ++j) {
        const double y = g.yc(j);
        const int ky = static_cast<int>(std::floor(y / spec.eps));
        const double ly = (y - (ky + 0.5) * spec.eps) / spec.eps;
        for (int i = 0; i < nx; ++i) {
            const double x = g.xc(i);
            const int kx = static_cast<int>(std::floor((x + 0.5) / spec.eps));
            const double lx = (x - (-0.5 + (kx + 0.5) * spec.eps)) / spec.eps;
            if (spec.obstacle.contains(lx, ly)) g.solid[g.cid(i, j)] = 1;
        }
    }

    // film: solid below the lower boundary x2 = -eta*g(x1)
    for (int j = 0; j < pg.j_sigma; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double depth = spec.eta * spec.g(g.xc(i));
            if (g.yc(j) < -depth) g.solid[g.cid(i, j)] = 1;
        }
    }

    // the paper assumes obstacles never touch dQ_eps; verify on the mask
    for (int i = 0; i < nx; ++i) {
        if (g.is_solid(i, pg.j_sigma) || g.is_solid(i, ny - 1))
            throw Error(ErrorCategory::geometry,
                        "obstacle mask touches the porous-band boundary (Sigma or top)");
    }
    for (int j = pg.j_sigma; j < ny; ++j) {
        if (g.is_solid(0, j) || g.is_solid(nx - 1, j))
            throw Error(ErrorCategory::geometry,
                        "obstacle mask touches the lateral boundary of Q_eps");
    }
    return pg;
}

// ---------------------------------------------------------------------------
// Dilatations
// ---------------------------------------------------------------------------

ScalarField rescale_field(const PerforatedGrid& pg, const std::vector<double>& cell_values,
                          Medium medium, double eta) {
    if (cell_values.size() != static_cast<std::size_t>(pg.grid.cell_count()))
        throw Error(ErrorCategory::contract, "field size does not match the perforated grid");

    const Grid& src = pg.grid;
    ScalarField out;
    Grid& g = out.grid;
    g.nx = src.nx;
    g.dx = src.dx;
    g.x0 = src.x0;
    g.periodic_x = g.periodic_y = false;

    int j_begin = 0, j_end = 0;
    if (medium == Medium::porous) {
        j_begin = pg.j_sigma;
        j_end = src.ny;
        g.ny = pg.porous_rows;
        g.dy = src.dy / pg.h_realized;  // z2 = x2 / h
        g.y0 = 0.0;
    } else {
        if (!(eta > 0.0))
            throw Error(ErrorCategory::contract, "film rescaling requires eta > 0");
        j_begin = 0;
        j_end = pg.j_sigma;
        g.ny = pg.film_rows;
        g.dy = src.dy / eta;  // z2 = x2 / eta
        g.y0 = src.y0 / eta;
    }

    g.solid.assign(g.cell_count(), 0);
    out.values.assign(g.cell_count(), 0.0);
    for (int j = j_begin; j < j_end; ++j) {
        const int jz = j - j_begin;
        for (int i = 0; i < g.nx; ++i) {
            g.solid[g.cid(i, jz)] = src.solid[src.cid(i, j)];
            out.values[g.cid(i, jz)] = cell_values[src.cid(i, j)];
        }
    }
    return out;
}

std::vector<double> inverse_rescale_field(const PerforatedGrid& pg, const ScalarField& field,
                                          Medium medium) {
    const int expect = medium == Medium::porous ? pg.porous_rows : pg.film_rows;
    if (field.grid.ny != expect || field.grid.nx != pg.grid.nx)
        throw Error(ErrorCategory::contract, "field does not match the requested medium");

    std::vector<double> out(pg.grid.cell_count(), 0.0);
    const int j_begin = medium == Medium::porous ? pg.j_sigma : 0;
    for (int jz = 0; jz < field.grid.ny; ++jz)
        for (int i = 0; i < field.grid.nx; ++i)
            out[pg.grid.cid(i, j_begin + jz)] = field.values[field.grid.cid(i, jz)];
    return out;
}

} // namespace porolub
