/// @file unfolding.cpp
#include "porolub/unfolding.hpp"

#include <cmath>

namespace porolub {

namespace {

int exact_ratio(double num, double den, const char* what) {
    const double q = num / den;
    const int qi = static_cast<int>(std::lround(q));
    if (qi < 1 || std::fabs(q - qi) > 1e-9 * std::max(1.0, q))
        throw Error(ErrorCategory::alignment,
                    std::string("grid is not block-aligned: ") + what +
                        " does not subdivide exactly");
    return qi;
}

}  // namespace

UnfoldedField unfold(const ScalarField& field, double eps, double h) {
    const Grid& g = field.grid;
    if (!(eps > 0.0 && h > 0.0 && eps < h))
        throw Error(ErrorCategory::contract, "unfolding requires 0 < eps < h");
    if (std::fabs(g.x0 + 0.5) > 1e-12 || std::fabs(g.y0) > 1e-12 ||
        std::fabs(g.nx * g.dx - 1.0) > 1e-9 || std::fabs(g.ny * g.dy - 1.0) > 1e-9)
        throw Error(ErrorCategory::contract,
                    "unfolding expects a field on the rescaled band omega x (0,1)");

    UnfoldedField out;
    out.eps = eps;
    out.h = h;
    out.K1 = exact_ratio(1.0, eps, "1/eps");
    out.K2 = exact_ratio(h, eps, "h/eps");
    out.n1 = exact_ratio(eps, g.dx, "eps/dx");
    const double block_height = eps / h;
    out.n2 = exact_ratio(block_height, g.dy, "(eps/h)/dy");
    if (out.K1 * out.n1 != g.nx || out.K2 * out.n2 != g.ny)
        throw Error(ErrorCategory::alignment, "block decomposition does not match the grid");

    out.values.assign(static_cast<std::size_t>(out.block_count()) * out.local_count(), 0.0);
    out.fluid.assign(out.values.size(), 0);
    for (int k2 = 0; k2 < out.K2; ++k2)
        for (int k1 = 0; k1 < out.K1; ++k1)
            for (int jy = 0; jy < out.n2; ++jy)
                for (int iy = 0; iy < out.n1; ++iy) {
                    const int ci = k1 * out.n1 + iy;
                    const int cj = k2 * out.n2 + jy;
                    const int id = out.idx(k1, k2, iy, jy);
                    if (!g.is_solid(ci, cj)) {
                        out.fluid[id] = 1;
                        out.values[id] = field.values[g.cid(ci, cj)];
                    }
                }
    return out;
}

ScalarField refold(const UnfoldedField& unf, const Grid& like) {
    if (unf.K1 * unf.n1 != like.nx || unf.K2 * unf.n2 != like.ny)
        throw Error(ErrorCategory::contract, "target grid does not match the unfolded layout");
    ScalarField out;
    out.grid = like;
    out.values.assign(like.cell_count(), 0.0);
    for (int k2 = 0; k2 < unf.K2; ++k2)
        for (int k1 = 0; k1 < unf.K1; ++k1)
            for (int jy = 0; jy < unf.n2; ++jy)
                for (int iy = 0; iy < unf.n1; ++iy)
                    out.values[like.cid(k1 * unf.n1 + iy, k2 * unf.n2 + jy)] =
                        unf.values[unf.idx(k1, k2, iy, jy)];
    return out;
}

NormIdentityReport verify_norm_identities(const ScalarField& field, double s, double eps,
                                          double h) {
    if (!(s >= 1.0)) throw Error(ErrorCategory::domain, "norm exponent s must be >= 1");
    const UnfoldedField unf = unfold(field, eps, h);
    const Grid& g = field.grid;

    // measures: micro cell in Y times macro block, and source cell
    const double w_hat = (eps * eps / h) / (static_cast<double>(unf.n1) * unf.n2);
    const double w_src = g.dx * g.dy;

    double val_hat = 0.0, val_src = 0.0;
    double d1_hat = 0.0, d1_src = 0.0;
    double d2_hat = 0.0, d2_src = 0.0;

    const double dy1 = 1.0 / unf.n1;          // micro spacings in Y
    const double dy2 = 1.0 / unf.n2;

    for (int k2 = 0; k2 < unf.K2; ++k2)
        for (int k1 = 0; k1 < unf.K1; ++k1)
            for (int jy = 0; jy < unf.n2; ++jy)
                for (int iy = 0; iy < unf.n1; ++iy) {
                    const int id = unf.idx(k1, k2, iy, jy);
                    if (!unf.fluid[id]) continue;
                    const int ci = k1 * unf.n1 + iy;
                    const int cj = k2 * unf.n2 + jy;
                    const double v = unf.values[id];
                    val_hat += std::pow(std::fabs(v), s) * w_hat;
                    val_src += std::pow(std::fabs(field.values[g.cid(ci, cj)]), s) * w_src;

                    if (iy + 1 < unf.n1 && unf.fluid[unf.idx(k1, k2, iy + 1, jy)]) {
                        const double dv = unf.values[unf.idx(k1, k2, iy + 1, jy)] - v;
                        d1_hat += std::pow(std::fabs(dv / dy1), s) * w_hat;
                        d1_src += std::pow(std::fabs(dv / g.dx), s) * w_src;
                    }
                    if (jy + 1 < unf.n2 && unf.fluid[unf.idx(k1, k2, iy, jy + 1)]) {
                        const double dv = unf.values[unf.idx(k1, k2, iy, jy + 1)] - v;
                        d2_hat += std::pow(std::fabs(dv / dy2), s) * w_hat;
                        d2_src += std::pow(std::fabs(dv / g.dy), s) * w_src;
                    }
                }

    const double inv_s = 1.0 / s;
    NormIdentityReport rep;
    const auto ratio = [inv_s](double hat, double src, double scale) {
        if (hat == 0.0 && src == 0.0) return 1.0;  // exact-zero match
        return std::pow(hat, inv_s) / (scale * std::pow(src, inv_s));
    };
    rep.value_ratio = ratio(val_hat, val_src, 1.0);
    rep.dy1_ratio = ratio(d1_hat, d1_src, eps);
    rep.dy2_ratio = ratio(d2_hat, d2_src, eps / h);
    return rep;
}

std::vector<double> cell_average(const UnfoldedField& unf) {
    std::vector<double> out(unf.block_count(), 0.0);
    const double dAy = 1.0 / (static_cast<double>(unf.n1) * unf.n2);
    for (int k2 = 0; k2 < unf.K2; ++k2)
        for (int k1 = 0; k1 < unf.K1; ++k1) {
            double acc = 0.0;
            for (int jy = 0; jy < unf.n2; ++jy)
                for (int iy = 0; iy < unf.n1; ++iy) {
                    const int id = unf.idx(k1, k2, iy, jy);
                    if (unf.fluid[id]) acc += unf.values[id] * dAy;
                }
            out[k2 * unf.K1 + k1] = acc;
        }
    return out;
}

} // namespace porolub
