/// @file unfolding.hpp
/// @brief Discrete two-scale unfolding on the rescaled porous band.
///
/// The band omega x (0,1) is divided into blocks of horizontal length eps and
/// vertical length eps/h; a cell-centered field is re-indexed into (macro
/// block k, micro coordinate y in Y) with values unchanged.  The re-indexing
/// is measure preserving, so the L^s norm identities
///   ||phi_hat||_s = ||phi~||_s,
///   ||d_y1 phi_hat||_s = eps ||d_z1 phi~||_s,
///   ||d_y2 phi_hat||_s = (eps/h) ||d_z2 phi~||_s
/// hold exactly for block-local one-sided differences.  Non-aligned grids are
/// refused rather than resampled: resampling would turn identities into
/// tolerance tests.
#pragma once

#include <vector>

#include "porolub/geometry.hpp"

namespace porolub {

struct UnfoldedField {
    int K1 = 0, K2 = 0;  ///< macro blocks along omega and across the band
    int n1 = 0, n2 = 0;  ///< micro resolution per block
    double eps = 0.0, h = 0.0;
    std::vector<double> values;        ///< [(k2*K1 + k1) * n1*n2 + (jy*n1 + iy)]
    std::vector<std::uint8_t> fluid;   ///< same layout, 1 = fluid

    int block_count() const { return K1 * K2; }
    int local_count() const { return n1 * n2; }
    int idx(int k1, int k2, int iy, int jy) const {
        return (k2 * K1 + k1) * local_count() + jy * n1 + iy;
    }
};

/// Re-index a cell-centered field on the rescaled porous band into blocks.
/// Masked values are zeroed on ingestion (the zero-extension convention).
/// Throws an alignment error when the grid does not subdivide the blocks
/// exactly.
UnfoldedField unfold(const ScalarField& field, double eps, double h);

/// Inverse re-indexing onto a grid shaped like the source.
ScalarField refold(const UnfoldedField& unf, const Grid& like);

struct NormIdentityReport {
    double value_ratio = 1.0;  ///< ||phi_hat||_s / ||phi~||_s
    double dy1_ratio = 1.0;    ///< ||d_y1 phi_hat||_s / (eps ||d_z1 phi~||_s)
    double dy2_ratio = 1.0;    ///< ||d_y2 phi_hat||_s / ((eps/h) ||d_z2 phi~||_s)
};

/// Evaluate the three ratios; both-zero norms report as exact matches (1).
NormIdentityReport verify_norm_identities(const ScalarField& field, double s, double eps,
                                          double h);

/// Per-block integral over the fluid micro cells (the discrete int_{Y_f} dy),
/// returned as a K1 x K2 macro field (row-major, k2 outer).
std::vector<double> cell_average(const UnfoldedField& unf);

} // namespace porolub
