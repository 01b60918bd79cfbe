/// @file dns.cpp
#include "porolub/dns.hpp"

#include <algorithm>
#include <cmath>

namespace porolub {

namespace {

void mean_zero_over_fluid(ScalarField& f) {
    double mean = 0.0;
    int n = 0;
    for (int c = 0; c < f.grid.cell_count(); ++c)
        if (!f.grid.solid[c]) { mean += f.values[c]; ++n; }
    if (n == 0) throw Error(ErrorCategory::contract, "field has no fluid cells");
    mean /= n;
    for (int c = 0; c < f.grid.cell_count(); ++c)
        if (!f.grid.solid[c]) f.values[c] -= mean;
}

// velocity magnitude at cell centers of one medium, physical values
double lr_velocity_norm(const Grid& g, const StaggeredField& u, int j_begin, int j_end,
                        double r, double measure_per_cell) {
    double acc = 0.0;
    for (int j = j_begin; j < j_end; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (g.is_solid(i, j)) continue;
            const int i1 = g.periodic_x ? (i + 1) % g.nx : i + 1;
            const double u1c = 0.5 * (u.u1[g.u1_id(i, j)] + u.u1[g.u1_id(i1, j)]);
            const double u2c = 0.5 * (u.u2[g.u2_id(i, j)] + u.u2[g.u2_id(i, j + 1)]);
            acc += std::pow(u1c * u1c + u2c * u2c, 0.5 * r) * measure_per_cell;
        }
    return std::pow(acc, 1.0 / r);
}

}  // namespace

DnsReport run_dns(const DnsCase& c) {
    if (!c.f1) throw Error(ErrorCategory::contract, "DNS case needs a force density f1");

    // the realized porous thickness snaps to whole cell rows; the regime must
    // still classify critical afterwards
    PerforatedDomainSpec spec;
    spec.eps = c.regime.eps;
    spec.h = c.regime.h;
    spec.eta = c.regime.eta;
    spec.obstacle = c.obstacle;
    spec.g = c.g;
    const PerforatedGrid pg = build_perforated_domain(spec, c.n_per_cell, c.cell_cap);

    const RegimeClassification cls =
        classify_regime(c.regime.eps, pg.h_realized, c.regime.eta, c.regime.r);
    if (cls.classification != RegimeClass::critical)
        throw Error(ErrorCategory::regime,
                    "realized parameters fall outside the critical band (lambda_est = " +
                        std::to_string(cls.lambda_est) + ")");

    DnsReport rep;
    rep.eps = c.regime.eps;
    rep.eta = c.regime.eta;
    rep.h_realized = pg.h_realized;
    rep.lambda_realized = cls.lambda_est;
    rep.r = c.regime.r;
    rep.domain = pg;

    StokesProblem pb = StokesProblem::paper(pg.grid, FluidModel(c.regime.r, c.nu, c.delta),
                                            c.f1);
    rep.stokes = solve_stokes(pb, c.solver);
    const Grid& g = pg.grid;

    // pressures per medium, dilated and gauged; no extension into obstacles
    // is performed - all comparisons restrict to fluid cells
    rep.porous_pressure = rescale_field(pg, rep.stokes.pressure, Medium::porous, c.regime.eta);
    rep.film_pressure = rescale_field(pg, rep.stokes.pressure, Medium::film, c.regime.eta);
    mean_zero_over_fluid(rep.porous_pressure);
    mean_zero_over_fluid(rep.film_pressure);

    // interface traces: first cell rows on each side of Sigma
    rep.trace_z.resize(g.nx);
    rep.trace_porous.resize(g.nx);
    rep.trace_film.resize(g.nx);
    for (int i = 0; i < g.nx; ++i) {
        rep.trace_z[i] = g.xc(i);
        rep.trace_porous[i] = rep.porous_pressure.values[rep.porous_pressure.grid.cid(i, 0)];
        rep.trace_film[i] =
            rep.film_pressure.values[rep.film_pressure.grid.cid(i, pg.film_rows - 1)];
    }
    double ch = 0.0;
    for (int i = 0; i < g.nx; ++i) ch += rep.trace_porous[i] - rep.trace_film[i];
    rep.c_hat = ch / g.nx;

    // L^r norms in dilated coordinates: values are unchanged under the
    // dilatation, only the measure rescales (dz2 = dx2/h or dx2/eta)
    const double r = c.regime.r;
    rep.norm_v_porous = lr_velocity_norm(g, rep.stokes.velocity, pg.j_sigma, g.ny, r,
                                         g.dx * g.dy / pg.h_realized);
    rep.norm_u_film =
        lr_velocity_norm(g, rep.stokes.velocity, 0, pg.j_sigma, r, g.dx * g.dy / c.regime.eta);

    // D_h[v~](z) equals the physical D[u](x) pointwise under the dilatation,
    // so the rescaled-gradient norm is the physical strain norm with the
    // dilated measure
    {
        const StaggeredField& u = rep.stokes.velocity;
        double acc = 0.0;
        for (int j = pg.j_sigma; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                if (g.is_solid(i, j)) continue;
                const double d11 = (u.u1[g.u1_id(i + 1, j)] - u.u1[g.u1_id(i, j)]) / g.dx;
                const double d22 = (u.u2[g.u2_id(i, j + 1)] - u.u2[g.u2_id(i, j)]) / g.dy;
                auto u1v = [&](int ii, int jj) {
                    if (jj < 0 || jj >= g.ny) return 0.0;
                    return u.u1[g.u1_id(ii, jj)];
                };
                auto u2v = [&](int ii, int jj) {
                    if (ii < 0 || ii >= g.nx) return 0.0;
                    return u.u2[g.u2_id(ii, jj)];
                };
                double d12 = 0.0;
                for (int cj = j; cj <= j + 1; ++cj)
                    for (int ci = i; ci <= i + 1; ++ci) {
                        const double t1 = (u1v(ci, cj) - u1v(ci, cj - 1)) / g.dy;
                        const double t2 = (u2v(ci, cj) - u2v(ci - 1, cj)) / g.dx;
                        d12 += 0.125 * (t1 + t2);
                    }
                acc += std::pow(d11 * d11 + d22 * d22 + 2.0 * d12 * d12, 0.5 * r) * g.dx *
                       g.dy / pg.h_realized;
            }
        rep.norm_dv_porous = std::pow(acc, 1.0 / r);
    }

    rep.f1_samples.resize(17);
    for (int i = 0; i < 17; ++i) rep.f1_samples[i] = c.f1(-0.5 + i / 16.0);
    return rep;
}

namespace {

double interp_limit(const ReynoldsSolution& limit, double z) {
    const int m = static_cast<int>(limit.z.size());
    const double t = (z + 0.5) * (m - 1);
    const int i = std::clamp(static_cast<int>(std::floor(t)), 0, m - 2);
    const double w = t - i;
    return (1.0 - w) * limit.p[i] + w * limit.p[i + 1];
}

// optimal L^{r'} constant shift: solves sum w A_{r'}(d - c) = 0 by bisection
// (strictly decreasing in c)
double optimal_shift(const std::vector<double>& diffs, const std::vector<double>& weights,
                     double rp) {
    double lo = diffs[0], hi = diffs[0];
    for (double d : diffs) { lo = std::min(lo, d); hi = std::max(hi, d); }
    if (lo == hi) return lo;
    auto score = [&](double cshift) {
        double acc = 0.0;
        for (std::size_t k = 0; k < diffs.size(); ++k)
            acc += weights[k] * power_map(diffs[k] - cshift, rp);
        return acc;
    };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (score(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(lo) + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

struct ShiftedDistance {
    double distance = 0.0;
    double shift = 0.0;
};

ShiftedDistance lrp_distance(const ScalarField& field, const ReynoldsSolution& limit,
                             double rp) {
    std::vector<double> diffs, weights;
    const Grid& g = field.grid;
    diffs.reserve(g.cell_count());
    weights.reserve(g.cell_count());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (g.is_solid(i, j)) continue;
            diffs.push_back(field.values[g.cid(i, j)] - interp_limit(limit, g.xc(i)));
            weights.push_back(g.dx * g.dy);
        }
    ShiftedDistance out;
    out.shift = optimal_shift(diffs, weights, rp);
    double acc = 0.0;
    for (std::size_t k = 0; k < diffs.size(); ++k)
        acc += weights[k] * std::pow(std::fabs(diffs[k] - out.shift), rp);
    out.distance = std::pow(acc, 1.0 / rp);
    return out;
}

}  // namespace

CompareReport compare_to_homogenized(const DnsReport& report, const ReynoldsSolution& limit,
                                     const ReynoldsProblem& limit_problem) {
    if (limit_problem.r != report.r)
        throw Error(ErrorCategory::contract, "flow index mismatch between DNS and limit");
    for (int i = 0; i < 17; ++i) {
        const double z = -0.5 + i / 16.0;
        const double fl = limit_problem.f1(z);
        if (std::fabs(fl - report.f1_samples[i]) >
            1e-12 * std::max(1.0, std::fabs(fl)))
            throw Error(ErrorCategory::contract, "force density mismatch between DNS and limit");
    }

    const double rp = conjugate_exponent(report.r);
    CompareReport out;
    const ShiftedDistance sp = lrp_distance(report.porous_pressure, limit, rp);
    const ShiftedDistance sf = lrp_distance(report.film_pressure, limit, rp);
    out.porous_distance = sp.distance;
    out.film_distance = sf.distance;
    out.shift_porous = sp.shift;
    out.shift_film = sf.shift;
    out.interface_jump = std::fabs(sp.shift - sf.shift);
    return out;
}

double fit_scaling_exponent(const std::vector<std::pair<double, double>>& values) {
    if (values.size() < 2)
        throw Error(ErrorCategory::contract, "exponent fit needs at least 2 samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [eps, norm] : values) {
        if (!(eps > 0.0) || !(norm > 0.0))
            throw Error(ErrorCategory::contract, "exponent fit needs positive samples");
        const double x = std::log(eps), y = std::log(norm);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(values.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace porolub
