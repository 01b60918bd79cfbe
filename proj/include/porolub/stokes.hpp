/// @file stokes.hpp
/// @brief Nonlinear solver for the power-law Stokes system
///        -nu div(|D u|^{r-2} D u) + grad p = f,  div u = 0
///        on masked MAC staggered grids with no-slip / periodic boundaries.
///
/// Method: Picard (frozen-viscosity) outer iteration; each inner step is a
/// linear Stokes solve by augmented-Lagrangian Uzawa, with the penalized
/// momentum operator factorized once per Picard step by a sparse direct
/// solver.  With the Uzawa pressure step equal to the penalty, each inner
/// solve satisfies the discrete momentum balance exactly and the divergence
/// contracts geometrically, so the outer loop converges on the nonlinearity
/// alone.  Deterministic for a fixed configuration.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "porolub/grid.hpp"
#include "porolub/rheology.hpp"

namespace porolub {

/// Boundary conditions are carried by the grid: periodic axes wrap, all
/// non-periodic sides are no-slip walls, mask boundaries are no-slip.
struct StokesProblem {
    Grid grid;
    FluidModel model;
    std::function<double(double, double)> fx;  ///< first force component, or null for 0
    std::function<double(double, double)> fy;  ///< second force component, or null for 0
    bool paper_mode = false;  ///< f = (f1(x1), 0), f1 independent of x2

    /// Paper-mode problem: f = (f1(x1), 0).
    static StokesProblem paper(Grid grid, FluidModel model, std::function<double(double)> f1);

    double force_x(double x, double y) const { return fx ? fx(x, y) : 0.0; }
    double force_y(double x, double y) const { return fy ? fy(x, y) : 0.0; }
};

struct SolverConfig {
    double tol_momentum = 1e-8;  ///< relative momentum residual target
    double tol_div = 1e-10;      ///< max |div u| target
    int max_picard = 500;
    int max_uzawa = 200;
    double rho = 1.0;    ///< augmented-Lagrangian penalty scale (auto-scaled by viscosity)
    double theta = 1.0;  ///< initial Picard damping, halved on residual increase
    bool verbose = false;

    void validate() const {
        if (!(tol_momentum > 0.0 && tol_div > 0.0))
            throw Error(ErrorCategory::config, "solver tolerances must be positive");
        if (!(theta > 0.0 && theta <= 1.0))
            throw Error(ErrorCategory::config, "damping theta must lie in (0,1]");
        if (!(rho > 0.0))
            throw Error(ErrorCategory::config, "penalty rho must be positive");
    }
};

struct PicardStep {
    double momentum_rel = 0.0;
    double div_max = 0.0;
    double energy = 0.0;
    double theta = 1.0;
};

struct StokesSolution {
    StaggeredField velocity;
    std::vector<double> pressure;  ///< cell-centered, 0 in solid cells, mean-zero over fluid
    int iterations = 0;
    double momentum_rel = 0.0;
    double div_max = 0.0;
    double energy_value = 0.0;
    std::vector<PicardStep> history;
};

struct ResidualReport {
    double momentum_rel = 0.0;
    double div_max = 0.0;
};

StokesSolution solve_stokes(const StokesProblem& problem, const SolverConfig& cfg = {});

/// Recomputes both residuals directly from the fields, independently of the
/// solver loop.
ResidualReport residuals(const StokesProblem& problem, const StaggeredField& u,
                         const std::vector<double>& pressure);

/// Discrete energy (nu/r) sum |D u|^r dA - sum f.u dA over fluid cells.
double energy(const StokesProblem& problem, const StaggeredField& u);

/// Discrete viscous pairing <S(u), D u> (the weak form tested with phi = u);
/// equals the force pairing at convergence.
double viscous_pairing(const StokesProblem& problem, const StaggeredField& u);

/// Discrete force pairing <f, u>.
double force_pairing(const StokesProblem& problem, const StaggeredField& u);

/// CSV export (x1, x2, u1, u2, p) at cell centers, velocities interpolated.
std::string solution_csv(const StokesProblem& problem, const StokesSolution& sol);

} // namespace porolub
