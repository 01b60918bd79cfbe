/// @file cell_problem.cpp
#include "porolub/cell_problem.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace porolub {

CellSolution solve_cell(const UnitCell& cell, double r, int n, const SolverConfig& cfg) {
    if (n < 32)
        throw Error(ErrorCategory::contract, "cell-problem resolution must be >= 32");
    if (!(r > 1.0)) throw Error(ErrorCategory::domain, "flow_index must exceed 1");

    Grid grid = build_unit_cell_grid(cell, n);
    if (!grid.fluid_connected())
        throw Error(ErrorCategory::geometry, "cell fluid region is disconnected");

    CellSolution sol;
    sol.problem = StokesProblem::paper(std::move(grid), FluidModel(r, 1.0),
                                       [](double) { return 1.0; });
    sol.stokes = solve_stokes(sol.problem, cfg);
    sol.n = n;
    sol.r = r;
    sol.mu_flux = permeability_flux(sol);
    sol.mu_energy = permeability_energy(sol, r);
    return sol;
}

double permeability_flux(const CellSolution& sol) {
    const Grid& g = sol.problem.grid;
    const double dA = g.dx * g.dy;
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nxu(); ++i) acc += sol.stokes.velocity.u1[g.u1_id(i, j)] * dA;
    return acc;
}

double permeability_energy(const CellSolution& sol, double r) {
    if (r != sol.r)
        throw Error(ErrorCategory::contract, "flow index does not match the cell solution");
    // <S(w), D w> pairing; on the fully periodic cell this is exactly the
    // staggered quadrature of |D w|^r (delta-regularization differences are
    // O(delta^2) relative)
    return viscous_pairing(sol.problem, sol.stokes.velocity);
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

CellCache::CellCache(std::string path) : path_(std::move(path)) { load(); }

std::string CellCache::key(const UnitCell& cell, double r, int n, double delta,
                           const SolverConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << cell.obstacle.describe() << "|r=" << r << "|n=" << n << "|delta=" << delta
       << "|tolm=" << cfg.tol_momentum << "|told=" << cfg.tol_div;
    return os.str();
}

void CellCache::load() {
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (!in) return;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return;  // unreadable cache is treated as cold
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        CellCacheEntry e;
        e.mu_flux = v.value("mu_flux", 0.0);
        e.mu_energy = v.value("mu_energy", 0.0);
        e.iterations = v.value("iterations", 0);
        e.momentum_rel = v.value("momentum_rel", 0.0);
        e.div_max = v.value("div_max", 0.0);
        entries_[it.key()] = e;
    }
}

void CellCache::persist() const {
    if (path_.empty()) return;
    nlohmann::ordered_json j;
    for (const auto& [k, e] : entries_) {
        j[k] = {{"mu_flux", e.mu_flux},
                {"mu_energy", e.mu_energy},
                {"iterations", e.iterations},
                {"momentum_rel", e.momentum_rel},
                {"div_max", e.div_max}};
    }
    const std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw Error(ErrorCategory::io, "cannot write cache file " + tmp);
        out << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path_);
}

std::optional<CellCacheEntry> CellCache::lookup(const std::string& key) const {
    const std::scoped_lock lock(mutex_);
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    ++hits_;
    return it->second;
}

void CellCache::store(const std::string& key, const CellCacheEntry& entry) {
    const std::scoped_lock lock(mutex_);
    entries_[key] = entry;
    ++misses_;
    persist();
}

CellCacheEntry permeability_cached(const UnitCell& cell, double r, int n,
                                   const SolverConfig& cfg, CellCache& cache) {
    const FluidModel unit_model(r, 1.0);
    const std::string k = CellCache::key(cell, r, n, unit_model.delta, cfg);
    if (auto hit = cache.lookup(k)) return *hit;

    const CellSolution sol = solve_cell(cell, r, n, cfg);
    CellCacheEntry e;
    e.mu_flux = sol.mu_flux;
    e.mu_energy = sol.mu_energy;
    e.iterations = sol.stokes.iterations;
    e.momentum_rel = sol.stokes.momentum_rel;
    e.div_max = sol.stokes.div_max;
    cache.store(k, e);
    return e;
}

} // namespace porolub
