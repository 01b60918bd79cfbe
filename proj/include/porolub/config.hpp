/// @file config.hpp
/// @brief Run-configuration file: strict nested key-value parsing.
///
/// Format: one `section.key = value` assignment per line, `#` comments,
/// blank lines ignored.  Unknown keys and malformed values are errors with
/// line-anchored messages, so a study config is a complete, reproducible
/// record of the run.
#pragma once

#include <string>
#include <vector>

#include "porolub/geometry.hpp"
#include "porolub/reynolds.hpp"

namespace porolub {

struct RunConfig {
    // fluid
    double r = 2.0;
    double nu = 1.0;
    double delta = -1.0;  ///< < 0 requests the r-dependent default

    // cell
    ObstacleShape obstacle;           ///< default: centered disk 0.25
    int cell_resolution = 128;

    // film
    FilmProfile g = FilmProfile::constant(1.0);
    double film_a = -1.0;  ///< optional asserted bounds (< 0: derive from g)
    double film_b = -1.0;

    // reynolds
    std::string f1_spec = "constant 1";
    FluxMode flux_mode = FluxMode::paper_zero_flux;
    double flux_q0 = 0.0;
    double delta_p = 0.0;
    int quadrature_m = 1024;

    // regime
    double lambda = 1.0;
    std::vector<double> eps_list = {0.125, 0.0625};
    double eta_exponent = -1.0;  ///< < 0: midpoint default

    // dns
    bool dns_enabled = false;
    int dns_resolution = 16;
    std::size_t dns_cell_cap = 4'000'000;

    // output
    std::string out_dir = "out";
    std::vector<std::string> formats = {"csv", "json", "svg"};

    std::function<double(double)> make_f1() const;
    FluidModel make_fluid() const { return FluidModel(r, nu, delta); }
};

/// Parse configuration text; `origin` names the source in error messages.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");

RunConfig parse_config_file(const std::string& path);

/// Parse an f1 registry entry: "constant c" | "cospi" | "sin2pi" |
/// "poly c0 c1 ..." | "linear f(-1/2) f(1/2)".
std::function<double(double)> parse_force_spec(const std::string& spec);

} // namespace porolub
