/// @file pipeline.hpp
/// @brief Batch orchestration: cell problem (cached) -> Reynolds solve ->
///        optional DNS convergence study -> CSV/JSON/SVG artifacts.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "porolub/cell_problem.hpp"
#include "porolub/config.hpp"
#include "porolub/dns.hpp"

namespace porolub {

struct PipelineOptions {
    std::string out_dir;    ///< overrides config when nonempty
    std::string cache_dir;  ///< empty: POROLUB_CACHE_DIR env or the output dir
    int jobs = 1;
    std::vector<std::string> formats;  ///< overrides config when nonempty
};

struct StudyRow {
    double eps = 0.0, eta = 0.0, h_realized = 0.0, lambda_realized = 0.0;
    double norm_v = 0.0, norm_dv = 0.0, norm_u = 0.0;
    double porous_distance = 0.0, film_distance = 0.0, interface_jump = 0.0;
    int picard_iterations = 0;
};

struct PipelineOutcome {
    double mu_flux = 0.0;
    double mu_energy = 0.0;
    int cache_hits = 0;
    int cache_misses = 0;
    double q0 = 0.0;
    double weak_residual = 0.0;
    std::vector<StudyRow> study;
    double exponent_velocity = 0.0;  ///< fitted slope of ||v~|| vs eps (study runs only)
    std::vector<std::string> written;
};

/// Resolve the cache directory: explicit option, POROLUB_CACHE_DIR, fallback.
std::string resolve_cache_dir(const PipelineOptions& opt, const std::string& fallback);

/// Run the DNS study rows for the config (used by both `study` and `pipeline`).
std::vector<StudyRow> run_study(const RunConfig& cfg, const ReynoldsSolution& limit,
                                const ReynoldsProblem& limit_problem, int jobs,
                                std::vector<DnsReport>* reports = nullptr);

PipelineOutcome run_pipeline(const RunConfig& cfg, const PipelineOptions& opt,
                             std::ostream* log = nullptr);

} // namespace porolub
