/// @file porolub_main.cpp
/// @brief Batch CLI: permeability, reynolds, critical-regime, unfold-check,
///        dns, study, pipeline.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "porolub/cell_problem.hpp"
#include "porolub/config.hpp"
#include "porolub/dns.hpp"
#include "porolub/pipeline.hpp"
#include "porolub/svg.hpp"
#include "porolub/unfolding.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace porolub;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int jobs = 1;
    std::vector<std::string> formats;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* c = cmd->add_option("--config", args.config_path, "run-config file");
    if (config_required) c->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--jobs", args.jobs, "concurrent DNS jobs")->check(CLI::PositiveNumber);
    cmd->add_option("--format", args.formats, "output formats (csv|json|svg), repeatable")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
}

PipelineOptions options_from(const CommonArgs& args) {
    PipelineOptions opt;
    opt.out_dir = args.out_dir;
    opt.jobs = args.jobs;
    opt.formats = args.formats;
    return opt;
}

ReynoldsProblem reynolds_problem(const RunConfig& cfg, double mu) {
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

CellCacheEntry cached_mu(const RunConfig& cfg, const PipelineOptions& opt, int* hits = nullptr) {
    const std::string out_dir = opt.out_dir.empty() ? cfg.out_dir : opt.out_dir;
    const std::string cache_dir = resolve_cache_dir(opt, out_dir);
    fs::create_directories(cache_dir);
    CellCache cache((fs::path(cache_dir) / "cell_cache.json").string());
    const CellCacheEntry e =
        permeability_cached(UnitCell{cfg.obstacle}, cfg.r, cfg.cell_resolution, {}, cache);
    if (hits) *hits = cache.hits();
    return e;
}

int cmd_permeability(const CommonArgs& args) {
    const RunConfig cfg = parse_config_file(args.config_path);
    const PipelineOptions opt = options_from(args);
    int hits = 0;
    const CellCacheEntry e = cached_mu(cfg, opt, &hits);
    ordered_json j;
    j["mu_flux"] = e.mu_flux;
    j["mu_energy"] = e.mu_energy;
    j["relative_gap"] = std::fabs(e.mu_flux - e.mu_energy) / e.mu_flux;
    j["iterations"] = e.iterations;
    j["momentum_rel"] = e.momentum_rel;
    j["div_max"] = e.div_max;
    j["cache_hits"] = hits;
    std::cout << j.dump(1) << "\n";
    return 0;
}

int cmd_reynolds(const CommonArgs& args) {
    const RunConfig cfg = parse_config_file(args.config_path);
    const PipelineOptions opt = options_from(args);
    const std::string out_dir = opt.out_dir.empty() ? cfg.out_dir : opt.out_dir;
    fs::create_directories(out_dir);

    const CellCacheEntry mu = cached_mu(cfg, opt);
    const ReynoldsProblem pb = reynolds_problem(cfg, mu.mu_flux);
    const ReynoldsSolution sol = solve_reynolds(pb);

    const auto& formats = opt.formats.empty() ? cfg.formats : opt.formats;
    const auto has = [&](const char* f) {
        for (const auto& x : formats)
            if (x == f) return true;
        return false;
    };
    if (has("csv")) {
        std::ofstream out(fs::path(out_dir) / "reynolds.csv");
        out << reynolds_csv(sol, pb);
    }
    if (has("svg")) {
        SvgOptions po;
        po.title = "limit pressure and average velocities";
        po.xlabel = "z1";
        po.ylabel = "value";
        std::vector<SvgSeries> series(3);
        series[0] = {sol.z, sol.p, "p*"};
        series[1] = {sol.z, sol.v_av, "V_av,1"};
        series[2] = {sol.z, sol.vfilm_av, "Vfilm_av,1"};
        std::ofstream out(fs::path(out_dir) / "reynolds.svg");
        out << svg_plot(series, po);
    }
    ordered_json j;
    j["mu"] = mu.mu_flux;
    j["q0"] = sol.q0;
    j["weak_residual"] = sol.weak_residual;
    j["p_range"] = {*std::min_element(sol.p.begin(), sol.p.end()),
                    *std::max_element(sol.p.begin(), sol.p.end())};
    std::cout << j.dump(1) << "\n";
    return 0;
}

int cmd_critical_regime(const CommonArgs& args) {
    const RunConfig cfg = parse_config_file(args.config_path);
    const std::vector<ScalingRegime> regimes =
        regime_sequence(cfg.r, cfg.lambda, cfg.eps_list, cfg.eta_exponent);
    std::cout << "eps,eta,h,lambda_est,classification\n";
    std::cout.precision(17);
    for (const auto& reg : regimes) {
        const RegimeClassification cls = classify_regime(reg.eps, reg.h, reg.eta, cfg.r);
        const char* name = cls.classification == RegimeClass::critical ? "critical"
                           : cls.classification == RegimeClass::subcritical ? "subcritical"
                                                                            : "supercritical";
        std::cout << reg.eps << "," << reg.eta << "," << reg.h << "," << cls.lambda_est << ","
                  << name << "\n";
    }
    return 0;
}

int cmd_unfold_check(const CommonArgs& args) {
    const RunConfig cfg = parse_config_file(args.config_path);
    const std::vector<ScalingRegime> regimes =
        regime_sequence(cfg.r, cfg.lambda, cfg.eps_list, cfg.eta_exponent);
    const ScalingRegime reg = regimes.front();

    // block-aligned rescaled porous band with the obstacle mask replicated
    const int n = cfg.dns_resolution;
    const int K1 = static_cast<int>(std::lround(1.0 / reg.eps));
    const int K2 = std::max(1, static_cast<int>(std::lround(reg.h / reg.eps)));
    const double h_aligned = K2 * reg.eps;

    ScalarField field;
    Grid& g = field.grid;
    g.nx = K1 * n;
    g.ny = K2 * n;
    g.dx = reg.eps / n;
    g.dy = 1.0 / g.ny;
    g.x0 = -0.5;
    g.y0 = 0.0;
    g.solid.assign(g.cell_count(), 0);
    const Grid cell = build_unit_cell_grid(UnitCell{cfg.obstacle}, n);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            g.solid[g.cid(i, j)] = cell.solid[cell.cid(i % n, j % n)];

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> noise(-0.5, 0.5);
    field.values.resize(g.cell_count());
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            field.values[g.cid(i, j)] =
                std::sin(3.0 * g.xc(i)) + std::cos(5.0 * g.yc(j)) + noise(rng);

    ordered_json j;
    j["eps"] = reg.eps;
    j["h"] = h_aligned;
    for (double s : {1.5, 2.0, 3.0}) {
        const NormIdentityReport rep = verify_norm_identities(field, s, reg.eps, h_aligned);
        ordered_json r;
        r["value_ratio"] = rep.value_ratio;
        r["dy1_ratio"] = rep.dy1_ratio;
        r["dy2_ratio"] = rep.dy2_ratio;
        j["s=" + std::to_string(s)] = r;
    }
    std::cout << j.dump(1) << "\n";
    return 0;
}

int cmd_dns(const CommonArgs& args) {
    const RunConfig cfg = parse_config_file(args.config_path);
    const PipelineOptions opt = options_from(args);
    const std::string out_dir = opt.out_dir.empty() ? cfg.out_dir : opt.out_dir;
    fs::create_directories(out_dir);

    const std::vector<ScalingRegime> regimes =
        regime_sequence(cfg.r, cfg.lambda, cfg.eps_list, cfg.eta_exponent);
    DnsCase dc;
    dc.regime = regimes.front();
    dc.obstacle = cfg.obstacle;
    dc.g = cfg.g;
    dc.f1 = cfg.make_f1();
    dc.nu = cfg.nu;
    dc.delta = cfg.delta;
    dc.n_per_cell = cfg.dns_resolution;
    dc.cell_cap = cfg.dns_cell_cap;
    const DnsReport rep = run_dns(dc);

    const auto& formats = opt.formats.empty() ? cfg.formats : opt.formats;
    for (const auto& f : formats) {
        if (f == "csv") {
            StokesProblem pb = StokesProblem::paper(rep.domain.grid,
                                                    FluidModel(cfg.r, cfg.nu, cfg.delta),
                                                    cfg.make_f1());
            std::ofstream out(fs::path(out_dir) / "dns_fields.csv");
            out << solution_csv(pb, rep.stokes);
        }
    }
    ordered_json j;
    j["eps"] = rep.eps;
    j["eta"] = rep.eta;
    j["h_realized"] = rep.h_realized;
    j["lambda_realized"] = rep.lambda_realized;
    j["norm_v_porous"] = rep.norm_v_porous;
    j["norm_dv_porous"] = rep.norm_dv_porous;
    j["norm_u_film"] = rep.norm_u_film;
    j["c_hat"] = rep.c_hat;
    j["picard_iterations"] = rep.stokes.iterations;
    j["momentum_rel"] = rep.stokes.momentum_rel;
    j["div_max"] = rep.stokes.div_max;
    std::cout << j.dump(1) << "\n";
    return 0;
}

int cmd_study(const CommonArgs& args) {
    RunConfig cfg = parse_config_file(args.config_path);
    cfg.dns_enabled = true;
    const PipelineOptions opt = options_from(args);
    PipelineOutcome out = run_pipeline(cfg, opt, &std::cerr);
    ordered_json j;
    j["cases"] = out.study.size();
    j["fitted_velocity_exponent"] = out.exponent_velocity;
    for (const auto& w : out.written) j["written"].push_back(w);
    std::cout << j.dump(1) << "\n";
    return 0;
}

int cmd_pipeline(const CommonArgs& args) {
    const RunConfig cfg = parse_config_file(args.config_path);
    const PipelineOptions opt = options_from(args);
    PipelineOutcome out = run_pipeline(cfg, opt, &std::cerr);
    ordered_json j;
    j["mu_flux"] = out.mu_flux;
    j["mu_energy"] = out.mu_energy;
    j["q0"] = out.q0;
    j["cache_hits"] = out.cache_hits;
    for (const auto& w : out.written) j["written"].push_back(w);
    std::cout << j.dump(1) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"power-law thin porous medium / thin film homogenization toolkit"};
    app.require_subcommand(1);

    CommonArgs a_perm, a_rey, a_crit, a_unf, a_dns, a_study, a_pipe;
    auto* c_perm = app.add_subcommand("permeability", "solve the cell problem, print mu");
    add_common(c_perm, a_perm);
    auto* c_rey = app.add_subcommand("reynolds", "solve the limit Reynolds equation");
    add_common(c_rey, a_rey);
    auto* c_crit = app.add_subcommand("critical-regime", "print the regime table as CSV");
    add_common(c_crit, a_crit);
    auto* c_unf = app.add_subcommand("unfold-check", "verify unfolding norm identities");
    add_common(c_unf, a_unf);
    auto* c_dns = app.add_subcommand("dns", "run one fine-scale case");
    add_common(c_dns, a_dns);
    auto* c_study = app.add_subcommand("study", "DNS convergence study against the limit");
    add_common(c_study, a_study);
    auto* c_pipe = app.add_subcommand("pipeline", "cell -> Reynolds -> optional study");
    add_common(c_pipe, a_pipe);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_perm->parsed()) return cmd_permeability(a_perm);
        if (c_rey->parsed()) return cmd_reynolds(a_rey);
        if (c_crit->parsed()) return cmd_critical_regime(a_crit);
        if (c_unf->parsed()) return cmd_unfold_check(a_unf);
        if (c_dns->parsed()) return cmd_dns(a_dns);
        if (c_study->parsed()) return cmd_study(a_study);
        if (c_pipe->parsed()) return cmd_pipeline(a_pipe);
    } catch (const Error& e) {
        ordered_json j;
        j["error"] = {{"category", to_string(e.category())}, {"message", e.what()}};
        std::cerr << j.dump(1) << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        ordered_json j;
        j["error"] = {{"category", "internal"}, {"message", e.what()}};
        std::cerr << j.dump(1) << "\n";
        return 1;
    }
    return 0;
}
