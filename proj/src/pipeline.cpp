/// @file pipeline.cpp
#include "porolub/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>

#include <json.hpp>

#include "porolub/svg.hpp"

namespace porolub {

namespace fs = std::filesystem;

std::string resolve_cache_dir(const PipelineOptions& opt, const std::string& fallback) {
    if (!opt.cache_dir.empty()) return opt.cache_dir;
    if (const char* env = std::getenv("POROLUB_CACHE_DIR"); env && *env) return env;
    return fallback;
}

namespace {

bool wants(const std::vector<std::string>& formats, const std::string& f) {
    for (const auto& x : formats)
        if (x == f) return true;
    return false;
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& written) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCategory::io, "cannot write " + path);
    out << content;
    written.push_back(path);
}

ReynoldsProblem limit_problem_from(const RunConfig& cfg, double mu) {
    ReynoldsProblem pb;
    pb.f1 = cfg.make_f1();
    pb.g = cfg.g;
    pb.mu = mu;
    pb.nu = cfg.nu;
    pb.r = cfg.r;
    pb.lambda = cfg.lambda;
    pb.mode = cfg.flux_mode;
    pb.q0 = cfg.flux_q0;
    pb.delta_p = cfg.delta_p;
    pb.m = cfg.quadrature_m;
    return pb;
}

}  // namespace

std::vector<StudyRow> run_study(const RunConfig& cfg, const ReynoldsSolution& limit,
                                const ReynoldsProblem& limit_problem, int jobs,
                                std::vector<DnsReport>* reports) {
    const std::vector<ScalingRegime> regimes =
        regime_sequence(cfg.r, cfg.lambda, cfg.eps_list, cfg.eta_exponent);

    std::vector<DnsReport> reps(regimes.size());
    const int par = std::max(1, jobs);
    for (std::size_t base = 0; base < regimes.size(); base += par) {
        std::vector<std::future<DnsReport>> chunk;
        for (std::size_t k = base; k < std::min(base + par, regimes.size()); ++k) {
            DnsCase dc;
            dc.regime = regimes[k];
            dc.obstacle = cfg.obstacle;
            dc.g = cfg.g;
            dc.f1 = cfg.make_f1();
            dc.nu = cfg.nu;
            dc.delta = cfg.delta;
            dc.n_per_cell = cfg.dns_resolution;
            dc.cell_cap = cfg.dns_cell_cap;
            chunk.push_back(std::async(par > 1 ? std::launch::async : std::launch::deferred,
                                       [dc] { return run_dns(dc); }));
        }
        for (std::size_t k = 0; k < chunk.size(); ++k) reps[base + k] = chunk[k].get();
    }

    std::vector<StudyRow> rows;
    for (const auto& rep : reps) {
        const CompareReport cmp = compare_to_homogenized(rep, limit, limit_problem);
        StudyRow row;
        row.eps = rep.eps;
        row.eta = rep.eta;
        row.h_realized = rep.h_realized;
        row.lambda_realized = rep.lambda_realized;
        row.norm_v = rep.norm_v_porous;
        row.norm_dv = rep.norm_dv_porous;
        row.norm_u = rep.norm_u_film;
        row.porous_distance = cmp.porous_distance;
        row.film_distance = cmp.film_distance;
        row.interface_jump = cmp.interface_jump;
        row.picard_iterations = rep.stokes.iterations;
        rows.push_back(row);
    }
    if (reports) *reports = std::move(reps);
    return rows;
}

PipelineOutcome run_pipeline(const RunConfig& cfg, const PipelineOptions& opt,
                             std::ostream* log) {
    PipelineOutcome out;
    const std::string out_dir = opt.out_dir.empty() ? cfg.out_dir : opt.out_dir;
    const std::vector<std::string>& formats = opt.formats.empty() ? cfg.formats : opt.formats;
    fs::create_directories(out_dir);

    // 1. permeability with cache
    const std::string cache_dir = resolve_cache_dir(opt, out_dir);
    fs::create_directories(cache_dir);
    CellCache cache((fs::path(cache_dir) / "cell_cache.json").string());
    UnitCell cell{cfg.obstacle};
    SolverConfig scfg;
    const CellCacheEntry mu = permeability_cached(cell, cfg.r, cfg.cell_resolution, scfg, cache);
    out.mu_flux = mu.mu_flux;
    out.mu_energy = mu.mu_energy;
    out.cache_hits = cache.hits();
    out.cache_misses = cache.misses();
    if (log) *log << "permeability: mu_flux=" << mu.mu_flux << " mu_energy=" << mu.mu_energy
                  << " (cache hits " << cache.hits() << ")\n";

    // 2. Reynolds solve and velocity reconstruction
    const ReynoldsProblem rp = limit_problem_from(cfg, mu.mu_flux);
    const ReynoldsSolution rs = solve_reynolds(rp);
    out.q0 = rs.q0;
    out.weak_residual = rs.weak_residual;
    if (log) *log << "reynolds: q0=" << rs.q0 << " weak_residual=" << rs.weak_residual << "\n";

    if (wants(formats, "csv"))
        write_file((fs::path(out_dir) / "reynolds.csv").string(), reynolds_csv(rs, rp),
                   out.written);
    if (wants(formats, "svg")) {
        SvgOptions po;
        po.title = "limit pressure and average velocities";
        po.xlabel = "z1";
        po.ylabel = "value";
        std::vector<SvgSeries> series(3);
        series[0] = {rs.z, rs.p, "p*"};
        series[1] = {rs.z, rs.v_av, "V_av,1"};
        series[2] = {rs.z, rs.vfilm_av, "Vfilm_av,1"};
        write_file((fs::path(out_dir) / "reynolds.svg").string(), svg_plot(series, po),
                   out.written);
    }

    // 3. optional DNS study against the paper-mode limit
    nlohmann::ordered_json jstudy = nlohmann::ordered_json::array();
    if (cfg.dns_enabled) {
        RunConfig paper_cfg = cfg;
        paper_cfg.flux_mode = FluxMode::paper_zero_flux;
        const ReynoldsProblem lp = limit_problem_from(paper_cfg, mu.mu_flux);
        const ReynoldsSolution ls = solve_reynolds(lp);

        std::vector<DnsReport> reports;
        out.study = run_study(cfg, ls, lp, opt.jobs, &reports);

        std::vector<std::pair<double, double>> vdata;
        std::string csv = "eps,eta,h_realized,lambda_realized,norm_v,norm_dv,norm_u,"
                          "porous_distance,film_distance,interface_jump,picard_iterations\n";
        for (const auto& row : out.study) {
            vdata.emplace_back(row.eps, row.norm_v);
            std::ostringstream os;
            os.precision(17);
            os << row.eps << "," << row.eta << "," << row.h_realized << ","
               << row.lambda_realized << "," << row.norm_v << "," << row.norm_dv << ","
               << row.norm_u << "," << row.porous_distance << "," << row.film_distance << ","
               << row.interface_jump << "," << row.picard_iterations << "\n";
            csv += os.str();
            jstudy.push_back({{"eps", row.eps},
                              {"eta", row.eta},
                              {"h_realized", row.h_realized},
                              {"lambda_realized", row.lambda_realized},
                              {"norm_v", row.norm_v},
                              {"norm_dv", row.norm_dv},
                              {"norm_u", row.norm_u},
                              {"porous_distance", row.porous_distance},
                              {"film_distance", row.film_distance},
                              {"interface_jump", row.interface_jump},
                              {"picard_iterations", row.picard_iterations}});
        }
        if (out.study.size() >= 2) out.exponent_velocity = fit_scaling_exponent(vdata);

        if (wants(formats, "csv")) {
            write_file((fs::path(out_dir) / "study.csv").string(), csv, out.written);
            for (std::size_t k = 0; k < reports.size(); ++k) {
                StokesProblem pb = StokesProblem::paper(reports[k].domain.grid,
                                                        FluidModel(cfg.r, cfg.nu, cfg.delta),
                                                        cfg.make_f1());
                std::ostringstream name;
                name << "dns_case_" << k << ".csv";
                write_file((fs::path(out_dir) / name.str()).string(),
                           solution_csv(pb, reports[k].stokes), out.written);
            }
        }
        if (wants(formats, "svg") && out.study.size() >= 2) {
            SvgOptions po;
            po.title = "DNS convergence to the limit model";
            po.xlabel = "eps";
            po.ylabel = "value";
            po.logx = po.logy = true;
            po.markers = true;
            std::vector<SvgSeries> series(3);
            for (const auto& row : out.study) {
                series[0].x.push_back(row.eps);
                series[0].y.push_back(row.film_distance);
                series[1].x.push_back(row.eps);
                series[1].y.push_back(std::max(row.interface_jump, 1e-300));
                series[2].x.push_back(row.eps);
                series[2].y.push_back(row.norm_v);
            }
            series[0].label = "film pressure distance";
            series[1].label = "interface jump";
            series[2].label = "porous velocity norm";
            write_file((fs::path(out_dir) / "study_convergence.svg").string(),
                       svg_plot(series, po), out.written);
        }
        if (log) *log << "study: " << out.study.size() << " cases, fitted velocity exponent "
                      << out.exponent_velocity << "\n";
    }

    // 4. summary
    if (wants(formats, "json")) {
        nlohmann::ordered_json j;
        j["mu_flux"] = out.mu_flux;
        j["mu_energy"] = out.mu_energy;
        j["cache"] = {{"hits", out.cache_hits}, {"misses", out.cache_misses}};
        j["q0"] = out.q0;
        j["weak_residual"] = out.weak_residual;
        if (cfg.dns_enabled) {
            j["study"] = jstudy;
            j["fitted_velocity_exponent"] = out.exponent_velocity;
        }
        write_file((fs::path(out_dir) / "summary.json").string(), j.dump(1) + "\n", out.written);
    }
    return out;
}

} // namespace porolub
