/// @file dns.hpp
/// @brief Direct simulation of the full eps-problem on Lambda_eps and
///        comparison against the homogenized predictions.
#pragma once

#include <functional>
#include <vector>

#include "porolub/geometry.hpp"
#include "porolub/reynolds.hpp"
#include "porolub/scaling.hpp"
#include "porolub/stokes.hpp"

namespace porolub {

struct DnsCase {
    ScalingRegime regime;
    ObstacleShape obstacle;
    FilmProfile g = FilmProfile::constant(1.0);
    std::function<double(double)> f1;
    double nu = 1.0;
    double delta = -1.0;  ///< regularization; < 0 requests the r-dependent default
    int n_per_cell = 16;
    SolverConfig solver;
    std::size_t cell_cap = 4'000'000;
};

struct DnsReport {
    double eps = 0.0, eta = 0.0;
    double h_realized = 0.0;
    double lambda_realized = 0.0;
    double r = 2.0;

    ScalarField porous_pressure;  ///< P1~ on the rescaled band, mean-zero over fluid
    ScalarField film_pressure;    ///< P2~ on the rescaled film, mean-zero

    double norm_v_porous = 0.0;   ///< ||v~||_{L^r}
    double norm_dv_porous = 0.0;  ///< ||D_h[v~]||_{L^r}
    double norm_u_film = 0.0;     ///< ||U~||_{L^r}

    std::vector<double> trace_z;       ///< x1 at the interface columns
    std::vector<double> trace_porous;  ///< P1~ in the first row above Sigma
    std::vector<double> trace_film;    ///< P2~ in the first row below Sigma
    double c_hat = 0.0;                ///< fitted offset between the traces

    std::vector<double> f1_samples;  ///< f1 at 17 reference points (contract checks)
    StokesSolution stokes;           ///< full fine-scale solution + diagnostics
    PerforatedGrid domain;
};

DnsReport run_dns(const DnsCase& c);

struct CompareReport {
    double porous_distance = 0.0;  ///< L^{r'} distance of P1~ to p* after optimal shift
    double film_distance = 0.0;    ///< same for P2~
    double interface_jump = 0.0;   ///< |c1 - c2| between the two optimal shifts
    double shift_porous = 0.0;
    double shift_film = 0.0;
};

/// Compare a DNS report against the limit solution (paper mode).  The limit
/// problem must match the case in f1 and flow index.
CompareReport compare_to_homogenized(const DnsReport& report, const ReynoldsSolution& limit,
                                     const ReynoldsProblem& limit_problem);

/// Least-squares slope of log(norm) against log(eps).
double fit_scaling_exponent(const std::vector<std::pair<double, double>>& values);

} // namespace porolub
