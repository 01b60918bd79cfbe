/// @file stokes.cpp
/// @brief MAC staggered power-law Stokes solver: Picard outer loop,
///        augmented-Lagrangian Uzawa inner loop, sparse direct momentum solves.
#include "porolub/stokes.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <cstdio>

namespace porolub {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using Vec = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// DOF layout
// ---------------------------------------------------------------------------
//
// Free faces are those that are neither Dirichlet (non-periodic domain walls)
// nor adjacent to a solid cell; everything else carries the value 0.  The
// divergence matrix D is geometry-only; the discrete pressure gradient is
// exactly -D^T, which is what makes the Uzawa pressure update close the
// momentum balance identically.

struct Layout {
    const Grid& g;
    int n_u = 0;
    int n_p = 0;
    std::vector<int> u1dof, u2dof, pdof;

    explicit Layout(const Grid& grid) : g(grid) {
        u1dof.assign(g.u1_count(), -1);
        u2dof.assign(g.u2_count(), -1);
        pdof.assign(g.cell_count(), -1);

        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nxu(); ++i) {
                if (!g.periodic_x && (i == 0 || i == g.nx)) continue;
                const int il = g.periodic_x ? (i - 1 + g.nx) % g.nx : i - 1;
                const int ir = g.periodic_x ? i : i;
                if (g.is_solid(il, j) || g.is_solid(ir, j)) continue;
                u1dof[g.u1_id(i, j)] = n_u++;
            }
        }
        for (int j = 0; j < g.nyv(); ++j) {
            for (int i = 0; i < g.nx; ++i) {
                if (!g.periodic_y && (j == 0 || j == g.ny)) continue;
                const int jb = g.periodic_y ? (j - 1 + g.ny) % g.ny : j - 1;
                const int jt = g.periodic_y ? j : j;
                if (g.is_solid(i, jb) || g.is_solid(i, jt)) continue;
                u2dof[g.u2_id(i, j)] = n_u++;
            }
        }
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (!g.is_solid(i, j)) pdof[g.cid(i, j)] = n_p++;
    }

    int u1_at(int i, int j) const {
        if (g.periodic_x) i = (i % g.nx + g.nx) % g.nx;
        else if (i < 0 || i > g.nx) return -1;
        if (g.periodic_y) j = (j % g.ny + g.ny) % g.ny;
        else if (j < 0 || j >= g.ny) return -1;
        return u1dof[g.u1_id(i, j)];
    }
    int u2_at(int i, int j) const {
        if (g.periodic_x) i = (i % g.nx + g.nx) % g.nx;
        else if (i < 0 || i >= g.nx) return -1;
        if (g.periodic_y) j = (j % g.ny + g.ny) % g.ny;
        else if (j < 0 || j > g.ny) return -1;
        return u2dof[g.u2_id(i, j)];
    }
    int p_at(int i, int j) const {
        if (g.periodic_x) i = (i % g.nx + g.nx) % g.nx;
        if (g.periodic_y) j = (j % g.ny + g.ny) % g.ny;
        if (i < 0 || i >= g.nx || j < 0 || j >= g.ny) return -1;
        return pdof[g.cid(i, j)];
    }

    void unpack(const Vec& x, const Vec& p, StaggeredField& uf, std::vector<double>& pf) const {
        uf = StaggeredField::zeros(g);
        for (int k = 0; k < g.u1_count(); ++k)
            if (u1dof[k] >= 0) uf.u1[k] = x[u1dof[k]];
        for (int k = 0; k < g.u2_count(); ++k)
            if (u2dof[k] >= 0) uf.u2[k] = x[u2dof[k]];
        pf.assign(g.cell_count(), 0.0);
        for (int k = 0; k < g.cell_count(); ++k)
            if (pdof[k] >= 0) pf[k] = p[pdof[k]];
    }
};

// small linear expression used during assembly
struct LinExpr {
    std::vector<std::pair<int, double>> terms;
    void add(int dof, double c) {
        if (dof >= 0 && c != 0.0) terms.emplace_back(dof, c);
    }
    void add_scaled(const LinExpr& e, double s) {
        for (const auto& [d, c] : e.terms) terms.emplace_back(d, s * c);
    }
};

// ---------------------------------------------------------------------------
// Field accessors (value versions).  Masked and Dirichlet faces read as 0.
// ---------------------------------------------------------------------------

struct FieldView {
    const Grid& g;
    const StaggeredField& f;

    double u1(int i, int j) const {
        if (g.periodic_x) i = (i % g.nx + g.nx) % g.nx;
        else if (i < 0 || i > g.nx) return 0.0;
        if (g.periodic_y) j = (j % g.ny + g.ny) % g.ny;
        else if (j < 0 || j >= g.ny) return 0.0;
        return f.u1[g.u1_id(i, j)];
    }
    double u2(int i, int j) const {
        if (g.periodic_x) i = (i % g.nx + g.nx) % g.nx;
        else if (i < 0 || i >= g.nx) return 0.0;
        if (g.periodic_y) j = (j % g.ny + g.ny) % g.ny;
        else if (j < 0 || j > g.ny) return 0.0;
        return f.u2[g.u2_id(i, j)];
    }
};

// ---------------------------------------------------------------------------
// Strain rates
// ---------------------------------------------------------------------------
//
// D11 and D22 live at cell centers, D12 at corners.  At non-periodic walls
// the wall-normal derivative in D12 uses a one-sided quadratic ghost that is
// exact on quadratics (the wall value is 0); mask boundaries use the plain
// stencil with zero face values, first order, consistent with the rasterized
// geometry.

struct StrainRates {
    int ncx = 0, ncy = 0;  // corner array dims
    std::vector<double> d11, d22;  // per cell
    std::vector<double> d12;       // per corner
    int xid(int i, int j) const { return j * ncx + i; }
};

double corner_d12(const Grid& g, const FieldView& v, int i, int j) {
    double t1;  // du1/dy
    if (!g.periodic_y && j == 0)
        t1 = (9.0 * v.u1(i, 0) - v.u1(i, 1)) / (3.0 * g.dy);
    else if (!g.periodic_y && j == g.ny)
        t1 = -(9.0 * v.u1(i, g.ny - 1) - v.u1(i, g.ny - 2)) / (3.0 * g.dy);
    else
        t1 = (v.u1(i, j) - v.u1(i, j - 1)) / g.dy;

    double t2;  // du2/dx
    if (!g.periodic_x && i == 0)
        t2 = (9.0 * v.u2(0, j) - v.u2(1, j)) / (3.0 * g.dx);
    else if (!g.periodic_x && i == g.nx)
        t2 = -(9.0 * v.u2(g.nx - 1, j) - v.u2(g.nx - 2, j)) / (3.0 * g.dx);
    else
        t2 = (v.u2(i, j) - v.u2(i - 1, j)) / g.dx;

    return 0.5 * (t1 + t2);
}

StrainRates compute_strains(const Grid& g, const StaggeredField& f) {
    FieldView v{g, f};
    StrainRates s;
    s.ncx = g.periodic_x ? g.nx : g.nx + 1;
    s.ncy = g.periodic_y ? g.ny : g.ny + 1;
    s.d11.assign(g.cell_count(), 0.0);
    s.d22.assign(g.cell_count(), 0.0);
    s.d12.assign(static_cast<std::size_t>(s.ncx) * s.ncy, 0.0);

    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            s.d11[g.cid(i, j)] = (v.u1(i + 1, j) - v.u1(i, j)) / g.dx;
            s.d22[g.cid(i, j)] = (v.u2(i, j + 1) - v.u2(i, j)) / g.dy;
        }
    for (int j = 0; j < s.ncy; ++j)
        for (int i = 0; i < s.ncx; ++i) s.d12[s.xid(i, j)] = corner_d12(g, v, i, j);
    return s;
}

// |D u|^2 at a cell: native D11, D22 plus corner-averaged D12.
double cell_norm2(const Grid& g, const StrainRates& s, int i, int j) {
    const int i1 = g.periodic_x ? (i + 1) % s.ncx : i + 1;
    const int j1 = g.periodic_y ? (j + 1) % s.ncy : j + 1;
    const double dm = 0.25 * (s.d12[s.xid(i, j)] + s.d12[s.xid(i1, j)] +
                              s.d12[s.xid(i, j1)] + s.d12[s.xid(i1, j1)]);
    const double a = s.d11[g.cid(i, j)];
    const double b = s.d22[g.cid(i, j)];
    return a * a + b * b + 2.0 * dm * dm;
}

// |D u|^2 at a corner: native D12 plus fluid-cell-averaged diagonal entries.
double corner_norm2(const Grid& g, const StrainRates& s, int i, int j) {
    double a = 0.0, b = 0.0;
    int cnt = 0;
    const int ci[4] = {i - 1, i, i - 1, i};
    const int cj[4] = {j - 1, j - 1, j, j};
    for (int k = 0; k < 4; ++k) {
        int ii = ci[k], jj = cj[k];
        if (g.periodic_x) ii = (ii + g.nx) % g.nx;
        if (g.periodic_y) jj = (jj + g.ny) % g.ny;
        if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) continue;
        if (g.is_solid(ii, jj)) continue;
        a += s.d11[g.cid(ii, jj)];
        b += s.d22[g.cid(ii, jj)];
        ++cnt;
    }
    if (cnt > 0) { a /= cnt; b /= cnt; }
    const double dd = s.d12[s.xid(i, j)];
    return a * a + b * b + 2.0 * dd * dd;
}

struct ViscosityFields {
    std::vector<double> cell;    // per cell (solid cells: 0, unused)
    std::vector<double> corner;  // per corner
    double max_value = 0.0;
};

ViscosityFields compute_viscosity(const Grid& g, const StrainRates& s, const FluidModel& model,
                                  double floor_rel) {
    ViscosityFields a;
    a.cell.assign(g.cell_count(), 0.0);
    a.corner.assign(s.d12.size(), 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!g.is_solid(i, j))
                a.cell[g.cid(i, j)] = regularized_viscosity(cell_norm2(g, s, i, j), model);
    for (int j = 0; j < s.ncy; ++j)
        for (int i = 0; i < s.ncx; ++i)
            a.corner[s.xid(i, j)] = regularized_viscosity(corner_norm2(g, s, i, j), model);

    for (double x : a.cell) a.max_value = std::max(a.max_value, x);
    for (double x : a.corner) a.max_value = std::max(a.max_value, x);

    if (floor_rel > 0.0) {
        // iteration-matrix floor only; keeps the momentum block nonsingular
        // where the degenerate (r > 2) viscosity vanishes at stagnation cells
        const double floor = floor_rel * std::max(a.max_value, model.nu);
        for (double& x : a.cell) x = std::max(x, floor);
        for (double& x : a.corner) x = std::max(x, floor);
    }
    return a;
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

struct Assembler {
    const Grid& g;
    const Layout& L;
    int ncx, ncy;

    Assembler(const Grid& grid, const Layout& layout)
        : g(grid), L(layout),
          ncx(grid.periodic_x ? grid.nx : grid.nx + 1),
          ncy(grid.periodic_y ? grid.ny : grid.ny + 1) {}

    int xid(int i, int j) const { return j * ncx + i; }

    LinExpr d11_expr(int ci, int cj) const {
        LinExpr e;
        e.add(L.u1_at(ci + 1, cj), 1.0 / g.dx);
        e.add(L.u1_at(ci, cj), -1.0 / g.dx);
        return e;
    }
    LinExpr d22_expr(int ci, int cj) const {
        LinExpr e;
        e.add(L.u2_at(ci, cj + 1), 1.0 / g.dy);
        e.add(L.u2_at(ci, cj), -1.0 / g.dy);
        return e;
    }
    LinExpr d12_expr(int i, int j) const {
        LinExpr e;
        if (!g.periodic_y && j == 0) {
            e.add(L.u1_at(i, 0), 0.5 * 9.0 / (3.0 * g.dy));
            e.add(L.u1_at(i, 1), -0.5 / (3.0 * g.dy));
        } else if (!g.periodic_y && j == g.ny) {
            e.add(L.u1_at(i, g.ny - 1), -0.5 * 9.0 / (3.0 * g.dy));
            e.add(L.u1_at(i, g.ny - 2), 0.5 / (3.0 * g.dy));
        } else {
            e.add(L.u1_at(i, j), 0.5 / g.dy);
            e.add(L.u1_at(i, j - 1), -0.5 / g.dy);
        }
        if (!g.periodic_x && i == 0) {
            e.add(L.u2_at(0, j), 0.5 * 9.0 / (3.0 * g.dx));
            e.add(L.u2_at(1, j), -0.5 / (3.0 * g.dx));
        } else if (!g.periodic_x && i == g.nx) {
            e.add(L.u2_at(g.nx - 1, j), -0.5 * 9.0 / (3.0 * g.dx));
            e.add(L.u2_at(g.nx - 2, j), 0.5 / (3.0 * g.dx));
        } else {
            e.add(L.u2_at(i, j), 0.5 / g.dx);
            e.add(L.u2_at(i - 1, j), -0.5 / g.dx);
        }
        return e;
    }

    SpMat momentum_matrix(const ViscosityFields& a) const {
        std::vector<Triplet> trip;
        trip.reserve(static_cast<std::size_t>(L.n_u) * 9);

        auto emit = [&](int row, const LinExpr& e) {
            for (const auto& [col, c] : e.terms) trip.emplace_back(row, col, c);
        };

        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nxu(); ++i) {
                const int row = L.u1dof[g.u1_id(i, j)];
                if (row < 0) continue;
                const int il = g.periodic_x ? (i - 1 + g.nx) % g.nx : i - 1;
                const int ir = i;  // free faces satisfy i < nx in both conventions
                LinExpr e;
                // -(S11(ir,j) - S11(il,j))/dx
                e.add_scaled(d11_expr(ir, j), -a.cell[g.cid(ir, j)] / g.dx);
                e.add_scaled(d11_expr(il, j), a.cell[g.cid(il, j)] / g.dx);
                // -(S12(i,j+1) - S12(i,j))/dy
                const int jt = g.periodic_y ? (j + 1) % ncy : j + 1;
                e.add_scaled(d12_expr(i, jt), -a.corner[xid(i, jt)] / g.dy);
                e.add_scaled(d12_expr(i, j), a.corner[xid(i, j)] / g.dy);
                emit(row, e);
            }
        }
        for (int j = 0; j < g.nyv(); ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int row = L.u2dof[g.u2_id(i, j)];
                if (row < 0) continue;
                const int jb = g.periodic_y ? (j - 1 + g.ny) % g.ny : j - 1;
                const int jt = j;  // free faces satisfy j < ny in both conventions
                LinExpr e;
                // -(S22(i,jt) - S22(i,jb))/dy
                e.add_scaled(d22_expr(i, jt), -a.cell[g.cid(i, jt)] / g.dy);
                e.add_scaled(d22_expr(i, jb), a.cell[g.cid(i, jb)] / g.dy);
                // -(S12(i+1,j) - S12(i,j))/dx
                const int ir = g.periodic_x ? (i + 1) % ncx : i + 1;
                e.add_scaled(d12_expr(ir, j), -a.corner[xid(ir, j)] / g.dx);
                e.add_scaled(d12_expr(i, j), a.corner[xid(i, j)] / g.dx);
                emit(row, e);
            }
        }

        SpMat A(L.n_u, L.n_u);
        A.setFromTriplets(trip.begin(), trip.end());
        return A;
    }

    SpMat divergence_matrix() const {
        std::vector<Triplet> trip;
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int row = L.pdof[g.cid(i, j)];
                if (row < 0) continue;
                const auto add = [&](int dof, double c) {
                    if (dof >= 0) trip.emplace_back(row, dof, c);
                };
                add(L.u1_at(i + 1, j), 1.0 / g.dx);
                add(L.u1_at(i, j), -1.0 / g.dx);
                add(L.u2_at(i, j + 1), 1.0 / g.dy);
                add(L.u2_at(i, j), -1.0 / g.dy);
            }
        }
        SpMat D(L.n_p, L.n_u);
        D.setFromTriplets(trip.begin(), trip.end());
        return D;
    }
};

double spec_energy(const Grid& g, const StrainRates& s, const FluidModel& model,
                   double force_pair) {
    double visc = 0.0;
    const double dA = g.dx * g.dy;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            if (!g.is_solid(i, j)) visc += std::pow(cell_norm2(g, s, i, j), 0.5 * model.r) * dA;
    return model.nu / model.r * visc - force_pair;
}

}  // namespace

// ---------------------------------------------------------------------------
// Problem construction
// ---------------------------------------------------------------------------

StokesProblem StokesProblem::paper(Grid grid, FluidModel model, std::function<double(double)> f1) {
    StokesProblem pb;
    pb.grid = std::move(grid);
    pb.model = model;
    pb.fx = [fn = std::move(f1)](double x, double) { return fn(x); };
    pb.fy = nullptr;
    pb.paper_mode = true;
    return pb;
}

// ---------------------------------------------------------------------------
// Pairings, energy, residuals (independent evaluation paths)
// ---------------------------------------------------------------------------

double force_pairing(const StokesProblem& pb, const StaggeredField& u) {
    const Grid& g = pb.grid;
    const double dA = g.dx * g.dy;
    double s = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nxu(); ++i)
            s += pb.force_x(g.xf(i), g.yc(j)) * u.u1[g.u1_id(i, j)] * dA;
    for (int j = 0; j < g.nyv(); ++j)
        for (int i = 0; i < g.nx; ++i)
            s += pb.force_y(g.xc(i), g.yf(j)) * u.u2[g.u2_id(i, j)] * dA;
    return s;
}

double energy(const StokesProblem& pb, const StaggeredField& u) {
    const StrainRates s = compute_strains(pb.grid, u);
    return spec_energy(pb.grid, s, pb.model, force_pairing(pb, u));
}

namespace {

// viscous stencil applied to a face; shared by the residual evaluator and the
// pairing below, written directly from the fields (no matrices involved)
struct DirectOperator {
    const Grid& g;
    const StrainRates& s;
    const ViscosityFields& a;
    int ncx, ncy;

    DirectOperator(const Grid& grid, const StrainRates& strains, const ViscosityFields& visc)
        : g(grid), s(strains), a(visc),
          ncx(grid.periodic_x ? grid.nx : grid.nx + 1),
          ncy(grid.periodic_y ? grid.ny : grid.ny + 1) {}

    int xid(int i, int j) const { return j * ncx + i; }

    double visc_u1(int i, int j) const {
        const int il = g.periodic_x ? (i - 1 + g.nx) % g.nx : i - 1;
        const double s11r = a.cell[g.cid(i, j)] * s.d11[g.cid(i, j)];
        const double s11l = a.cell[g.cid(il, j)] * s.d11[g.cid(il, j)];
        const int jt = g.periodic_y ? (j + 1) % ncy : j + 1;
        const double s12t = a.corner[xid(i, jt)] * s.d12[xid(i, jt)];
        const double s12b = a.corner[xid(i, j)] * s.d12[xid(i, j)];
        return -(s11r - s11l) / g.dx - (s12t - s12b) / g.dy;
    }
    double visc_u2(int i, int j) const {
        const int jb = g.periodic_y ? (j - 1 + g.ny) % g.ny : j - 1;
        const double s22t = a.cell[g.cid(i, j)] * s.d22[g.cid(i, j)];
        const double s22b = a.cell[g.cid(i, jb)] * s.d22[g.cid(i, jb)];
        const int ir = g.periodic_x ? (i + 1) % ncx : i + 1;
        const double s12r = a.corner[xid(ir, j)] * s.d12[xid(ir, j)];
        const double s12l = a.corner[xid(i, j)] * s.d12[xid(i, j)];
        return -(s22t - s22b) / g.dy - (s12r - s12l) / g.dx;
    }
};

bool face_free_u1(const Grid& g, int i, int j) {
    if (!g.periodic_x && (i == 0 || i == g.nx)) return false;
    const int il = g.periodic_x ? (i - 1 + g.nx) % g.nx : i - 1;
    return !g.is_solid(il, j) && !g.is_solid(i, j);
}
bool face_free_u2(const Grid& g, int i, int j) {
    if (!g.periodic_y && (j == 0 || j == g.ny)) return false;
    const int jb = g.periodic_y ? (j - 1 + g.ny) % g.ny : j - 1;
    return !g.is_solid(i, jb) && !g.is_solid(i, j);
}

}  // namespace

ResidualReport residuals(const StokesProblem& pb, const StaggeredField& u,
                         const std::vector<double>& pressure) {
    const Grid& g = pb.grid;
    const StrainRates s = compute_strains(g, u);
    const ViscosityFields a = compute_viscosity(g, s, pb.model, 0.0);  // true viscosity, no floor
    const DirectOperator op(g, s, a);

    auto pval = [&](int i, int j) {
        if (g.periodic_x) i = (i + g.nx) % g.nx;
        if (g.periodic_y) j = (j + g.ny) % g.ny;
        return pressure[g.cid(i, j)];
    };

    double rr = 0.0, ff = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nxu(); ++i) {
            if (!face_free_u1(g, i, j)) continue;
            const double f = pb.force_x(g.xf(i), g.yc(j));
            const int il = g.periodic_x ? (i - 1 + g.nx) % g.nx : i - 1;
            const double gp = (pval(i, j) - pval(il, j)) / g.dx;
            const double res = op.visc_u1(i, j) + gp - f;
            rr += res * res;
            ff += f * f;
        }
    for (int j = 0; j < g.nyv(); ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (!face_free_u2(g, i, j)) continue;
            const double f = pb.force_y(g.xc(i), g.yf(j));
            const int jb = g.periodic_y ? (j - 1 + g.ny) % g.ny : j - 1;
            const double gp = (pval(i, j) - pval(i, jb)) / g.dy;
            const double res = op.visc_u2(i, j) + gp - f;
            rr += res * res;
            ff += f * f;
        }

    FieldView v{g, u};
    double dmax = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (g.is_solid(i, j)) continue;
            const double div = (v.u1(i + 1, j) - v.u1(i, j)) / g.dx +
                               (v.u2(i, j + 1) - v.u2(i, j)) / g.dy;
            dmax = std::max(dmax, std::fabs(div));
        }

    ResidualReport rep;
    rep.momentum_rel = ff > 0.0 ? std::sqrt(rr / ff) : std::sqrt(rr);
    rep.div_max = dmax;
    return rep;
}

double viscous_pairing(const StokesProblem& pb, const StaggeredField& u) {
    const Grid& g = pb.grid;
    const StrainRates s = compute_strains(g, u);
    const ViscosityFields a = compute_viscosity(g, s, pb.model, 0.0);
    const DirectOperator op(g, s, a);
    const double dA = g.dx * g.dy;

    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nxu(); ++i)
            if (face_free_u1(g, i, j)) sum += u.u1[g.u1_id(i, j)] * op.visc_u1(i, j) * dA;
    for (int j = 0; j < g.nyv(); ++j)
        for (int i = 0; i < g.nx; ++i)
            if (face_free_u2(g, i, j)) sum += u.u2[g.u2_id(i, j)] * op.visc_u2(i, j) * dA;
    return sum;
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

StokesSolution solve_stokes(const StokesProblem& pb, const SolverConfig& cfg) {
    cfg.validate();
    const Grid& g = pb.grid;
    if (g.nx < 2 || g.ny < 2)
        throw Error(ErrorCategory::contract, "grid needs at least 2 cells per direction");
    if (g.fluid_cell_count() == 0)
        throw Error(ErrorCategory::contract, "grid has no fluid cells");
    if (pb.model.r < 2.0 && !(pb.model.delta > 0.0))
        throw Error(ErrorCategory::config,
                    "shear-thinning runs (r < 2) require a positive regularization delta");

    const Layout L(g);
    const Assembler asmb(g, L);
    const SpMat D = asmb.divergence_matrix();
    const SpMat Dt = D.transpose();
    const SpMat DtD = (Dt * D).pruned();

    // force vector over free faces
    Vec fvec = Vec::Zero(L.n_u);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nxu(); ++i) {
            const int d = L.u1dof[g.u1_id(i, j)];
            if (d >= 0) fvec[d] = pb.force_x(g.xf(i), g.yc(j));
        }
    for (int j = 0; j < g.nyv(); ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int d = L.u2dof[g.u2_id(i, j)];
            if (d >= 0) fvec[d] = pb.force_y(g.xc(i), g.yf(j));
        }

    StokesSolution sol;
    sol.velocity = StaggeredField::zeros(g);
    sol.pressure.assign(g.cell_count(), 0.0);

    if (fvec.norm() == 0.0) {
        // homogeneous problem: u = 0, p = 0 is the unique solution
        sol.history.push_back({0.0, 0.0, 0.0, 1.0});
        return sol;
    }

    Vec u_prev = Vec::Zero(L.n_u);
    Vec p_prev = Vec::Zero(L.n_p);

    StaggeredField uf = StaggeredField::zeros(g);
    std::vector<double> pf(g.cell_count(), 0.0);

    ResidualReport rep_prev = residuals(pb, uf, pf);

    // Newtonian bootstrap: first frozen viscosity is the consistency itself
    ViscosityFields a;
    a.cell.assign(g.cell_count(), pb.model.nu);
    a.corner.assign(static_cast<std::size_t>(g.periodic_x ? g.nx : g.nx + 1) *
                        (g.periodic_y ? g.ny : g.ny + 1),
                    pb.model.nu);
    a.max_value = pb.model.nu;

    const double floor_rel = 1e-12;
    // persistent damping cap: halved whenever the momentum residual of an
    // accepted step increased (the r > 2 Picard map can 2-cycle undamped)
    double theta_cap = cfg.theta;
    bool converged = false;

    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    bool analyzed = false;

    double rho_eff = cfg.rho * 100.0 * std::max(a.max_value, pb.model.nu);

    for (int it = 1; it <= cfg.max_picard; ++it) {
        SpMat A = asmb.momentum_matrix(a);
        SpMat A_rho = A + rho_eff * DtD;
        A_rho.makeCompressed();
        if (!analyzed) {
            lu.analyzePattern(A_rho);
            analyzed = true;
        }
        lu.factorize(A_rho);
        if (lu.info() != Eigen::Success)
            throw Error(ErrorCategory::convergence, "momentum factorization failed");

        // augmented-Lagrangian Uzawa on the frozen-viscosity Stokes problem
        Vec p_hat = p_prev;
        Vec u_hat;
        double dmax = 0.0;
        int escalations = 0;
        for (int k = 0; k < cfg.max_uzawa; ++k) {
            u_hat = lu.solve(fvec + Dt * p_hat);
            const Vec divu = D * u_hat;
            dmax = divu.size() ? divu.cwiseAbs().maxCoeff() : 0.0;
            p_hat -= rho_eff * divu;
            p_hat.array() -= p_hat.mean();
            if (dmax <= cfg.tol_div) break;
            if (k + 1 == cfg.max_uzawa && escalations < 3) {
                rho_eff *= 8.0;
                A_rho = A + rho_eff * DtD;
                A_rho.makeCompressed();
                lu.factorize(A_rho);
                k = -1;
                ++escalations;
            }
        }
        if (dmax > cfg.tol_div)
            throw Error(ErrorCategory::convergence,
                        "Uzawa failed to reach the divergence tolerance (div_max = " +
                            std::to_string(dmax) + ")");

        // damped Picard update
        const double th = theta_cap;
        const Vec u_new = u_prev + th * (u_hat - u_prev);
        const Vec p_new = p_prev + th * (p_hat - p_prev);
        L.unpack(u_new, p_new, uf, pf);
        const ResidualReport rep = residuals(pb, uf, pf);

        const bool residual_increased = rep.momentum_rel > rep_prev.momentum_rel * (1.0 + 1e-12);
        u_prev = u_new;
        p_prev = p_new;
        rep_prev = rep;
        if (residual_increased) theta_cap = std::max(0.5 * theta_cap, 1.0 / 256.0);

        if (cfg.verbose)
            std::fprintf(stderr, "picard %d: theta=%.3g cap=%.3g uzawa_div=%.3e mom=%.3e div=%.3e\n",
                         it, th, theta_cap, dmax, rep.momentum_rel, rep.div_max);

        const StrainRates strains = compute_strains(g, uf);
        const double J = spec_energy(g, strains, pb.model, force_pairing(pb, uf));
        sol.history.push_back({rep.momentum_rel, rep.div_max, J, th});
        sol.iterations = it;

        if (rep.momentum_rel <= cfg.tol_momentum && rep.div_max <= cfg.tol_div) {
            converged = true;
            break;
        }

        a = compute_viscosity(g, strains, pb.model, floor_rel);
        rho_eff = std::max(rho_eff, cfg.rho * 100.0 * std::max(a.max_value, pb.model.nu));
    }

    if (!converged) {
        std::ostringstream os;
        os << "Picard failed to converge in " << cfg.max_picard
           << " iterations; momentum residual history:";
        for (const auto& h : sol.history) os << " " << h.momentum_rel;
        throw Error(ErrorCategory::convergence, os.str());
    }

    // final gauge polish: exact mean-zero pressure over fluid cells
    double mean = 0.0;
    int nf = 0;
    for (int c = 0; c < g.cell_count(); ++c)
        if (!g.solid[c]) { mean += pf[c]; ++nf; }
    mean /= nf;
    for (int c = 0; c < g.cell_count(); ++c)
        if (!g.solid[c]) pf[c] -= mean;

    sol.velocity = uf;
    sol.pressure = pf;
    const ResidualReport final_rep = residuals(pb, sol.velocity, sol.pressure);
    sol.momentum_rel = final_rep.momentum_rel;
    sol.div_max = final_rep.div_max;
    sol.energy_value = energy(pb, sol.velocity);
    return sol;
}

std::string solution_csv(const StokesProblem& pb, const StokesSolution& sol) {
    const Grid& g = pb.grid;
    FieldView v{g, sol.velocity};
    std::ostringstream os;
    os.precision(17);
    os << "x1,x2,u1,u2,p\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double u1c = 0.5 * (v.u1(i, j) + v.u1(i + 1, j));
            const double u2c = 0.5 * (v.u2(i, j) + v.u2(i, j + 1));
            os << g.xc(i) << "," << g.yc(j) << "," << u1c << "," << u2c << ","
               << sol.pressure[g.cid(i, j)] << "\n";
        }
    return os.str();
}

} // namespace porolub
