/// @file cell_problem.hpp
/// @brief Periodic auxiliary problem on Y_f and the permeability mu.
///
/// The cell problem
///   -div_y(|D_y w|^{r-2} D_y w) + grad_y q = e1,  div_y w = 0,  w = 0 on T,
/// is solved with unit consistency (the physical nu enters the Darcy law as
/// nu^{r'-1} outside mu).  The permeability is computed two ways:
///   mu_flux   = int_{Y_f} w . e1 dy
///   mu_energy = int_{Y_f} |D_y w|^r dy
/// which coincide by testing the equation with w itself.
#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "porolub/geometry.hpp"
#include "porolub/stokes.hpp"

namespace porolub {

struct CellSolution {
    StokesProblem problem;   ///< the periodic cell problem (nu = 1, force e1)
    StokesSolution stokes;   ///< w_hat (velocity) and q_hat (pressure)
    double mu_flux = 0.0;
    double mu_energy = 0.0;
    int n = 0;
    double r = 2.0;
};

/// Solve the cell problem at resolution n >= 32.
CellSolution solve_cell(const UnitCell& cell, double r, int n, const SolverConfig& cfg = {});

/// Quadrature of w1 over the fluid cells (face-sum form).
double permeability_flux(const CellSolution& sol);

/// Quadrature of |D_y w|^r at the staggered locations consistent with the
/// discrete operator; equals the flux form up to solver tolerance.
double permeability_energy(const CellSolution& sol, double r);

// ---------------------------------------------------------------------------
// Cache: cell solves dominate runtime, so (shape, r, n, delta, tolerances)
// results persist in a small JSON sidecar file.
// ---------------------------------------------------------------------------

struct CellCacheEntry {
    double mu_flux = 0.0;
    double mu_energy = 0.0;
    int iterations = 0;
    double momentum_rel = 0.0;
    double div_max = 0.0;
};

class CellCache {
public:
    /// Empty path disables persistence (in-memory only).
    explicit CellCache(std::string path);

    static std::string key(const UnitCell& cell, double r, int n, double delta,
                           const SolverConfig& cfg);

    std::optional<CellCacheEntry> lookup(const std::string& key) const;
    void store(const std::string& key, const CellCacheEntry& entry);

    int hits() const { return hits_; }
    int misses() const { return misses_; }

private:
    void load();
    void persist() const;

    std::string path_;
    std::map<std::string, CellCacheEntry> entries_;
    mutable std::mutex mutex_;
    mutable int hits_ = 0;
    int misses_ = 0;
};

/// Cache-aware permeability: returns the cached entry or solves and stores.
CellCacheEntry permeability_cached(const UnitCell& cell, double r, int n,
                                   const SolverConfig& cfg, CellCache& cache);

} // namespace porolub
