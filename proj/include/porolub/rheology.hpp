/// @file rheology.hpp
/// @brief Power-law fluid model: scalar/tensor power maps, conjugate-exponent
///        algebra and the regularized viscosity shared by every solver.
///
/// The scalar map A_p(x) = |x|^{p-2} x and its tensor counterpart
/// S_r(xi) = |xi|^{r-2} xi (Frobenius norm, full contraction) are the
/// monotone operators the whole pipeline is built on: the Darcy and Reynolds
/// limit laws are A_{r'} laws in the pressure gradient, and A_r / A_{r'} are
/// mutually inverse.
#pragma once

#include "porolub/error.hpp"

namespace porolub {

/// Conjugate exponent r' = r/(r-1).  Requires r > 1.
double conjugate_exponent(double r);

/// Scalar power map |x|^{p-2} x, evaluated as sign(x)|x|^{p-1} so that the
/// removable singularity at x = 0 (for p < 2) evaluates to exactly 0.
double power_map(double x, double p);

/// Symmetric 2x2 tensor, stored by its three independent entries.
struct SymTensor2 {
    double a11 = 0.0;
    double a22 = 0.0;
    double a12 = 0.0;

    /// Squared Frobenius norm with full contraction: a11^2 + a22^2 + 2 a12^2.
    double norm2() const { return a11 * a11 + a22 * a22 + 2.0 * a12 * a12; }
};

/// Tensor power map |xi|^{r-2} xi with the full-contraction norm.
SymTensor2 tensor_power_map(const SymTensor2& xi, double r);

/// General 2x2 entry point; throws a contract error if a12 != a21.
SymTensor2 tensor_power_map(double a11, double a12, double a21, double a22, double r);

/// Power-law fluid: flow index r, consistency nu, strain-rate floor delta.
struct FluidModel {
    double r = 2.0;       ///< flow index, r > 1
    double nu = 1.0;      ///< consistency, nu > 0
    double delta = 0.0;   ///< regularization floor, delta >= 0

    FluidModel() = default;

    /// delta < 0 requests the default: 1e-8 for shear-thinning (r < 2),
    /// 0 for r >= 2 where the viscosity is degenerate but finite.
    FluidModel(double r_, double nu_, double delta_ = -1.0);

    double conjugate() const { return conjugate_exponent(r); }
};

/// Regularized viscosity nu*(delta^2 + d2)^{(r-2)/2} for squared strain-rate
/// norm d2 >= 0.  Throws for the genuinely singular case delta = 0, d2 = 0,
/// r < 2 (caller must regularize shear-thinning runs).
double regularized_viscosity(double d2, const FluidModel& model);

} // namespace porolub
