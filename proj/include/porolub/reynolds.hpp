/// @file reynolds.hpp
/// @brief Coupled generalized Reynolds equation for the limit pressure p*.
///
/// The weak form
///   int_omega G(z1) |f1 - dp*/dz1|^{r'-2} (f1 - dp*/dz1) psi' dz1 = 0
/// for every psi in W^{1,r'}(omega), with
///   G(z1) = mu/nu^{r'-1} + g(z1)^{r'} / (lambda 2^{r'/2} (r'+1) nu^{r'-1}),
/// forces a constant flux q0 = G A_{r'}(f1 - dp*); the free test space makes
/// q0 = 0, and then dp*/dz1 = f1 - A_r(q0/G) pointwise (A_r inverts A_{r'}).
/// The pressure is recovered by cumulative quadrature and a mean-zero shift.
/// Prescribed-flux and pressure-drop modes are extensions beyond the
/// zero-flux limit model, solved by monotone bisection on the total drop.
#pragma once

#include <functional>
#include <vector>

#include "porolub/geometry.hpp"
#include "porolub/rheology.hpp"

namespace porolub {

enum class FluxMode { paper_zero_flux, prescribed_flux, prescribed_pressure_drop };

struct ReynoldsProblem {
    std::function<double(double)> f1;    ///< force density on omega
    FilmProfile g = FilmProfile::constant(1.0);
    double mu = 0.0;      ///< permeability, > 0
    double nu = 1.0;      ///< consistency, > 0
    double r = 2.0;       ///< flow index, > 1
    double lambda = 1.0;  ///< critical coupling constant, > 0
    FluxMode mode = FluxMode::paper_zero_flux;
    double q0 = 0.0;       ///< prescribed flux (prescribed_flux mode)
    double delta_p = 0.0;  ///< prescribed drop p(1/2) - p(-1/2) (pressure-drop mode)
    int m = 1024;          ///< quadrature nodes, >= 64
    double bracket_scale = 1.0;  ///< initial bisection bracket half-width

    double rp() const { return conjugate_exponent(r); }
    void validate() const;
};

struct ReynoldsSolution {
    std::vector<double> z;        ///< m uniform nodes on [-1/2, 1/2]
    std::vector<double> p;        ///< limit pressure p*, mean-zero
    std::vector<double> dp;       ///< dp*/dz1 at the nodes
    double q0 = 0.0;              ///< realized constant flux
    std::vector<double> v_av;     ///< Darcy average velocity V_av,1 at the nodes
    std::vector<double> vfilm_av; ///< film average velocity at the nodes
    double weak_residual = 0.0;   ///< weak-form residual against 8 polynomial tests
};

/// Coefficient G(z1) >= mu/nu^{r'-1} + a^{r'}/(lambda 2^{r'/2}(r'+1)nu^{r'-1}) > 0.
double coefficient_G(double z1, const ReynoldsProblem& problem);

ReynoldsSolution solve_reynolds(const ReynoldsProblem& problem);

/// V_av,1(z1) = (mu/nu^{r'-1}) |q|^{r'-2} q with q = f1 - dp*/dz1; V_av,2 = 0.
std::vector<double> darcy_velocity(const ReynoldsSolution& sol, const ReynoldsProblem& problem);

/// Film average: g^{r'} / (2^{r'/2}(r'+1) nu^{r'-1}) |q|^{r'-2} q.
std::vector<double> film_average_velocity(const ReynoldsSolution& sol,
                                          const ReynoldsProblem& problem);

/// Closed-form film profile
///   U1(z1,z2) = A_{r'}((2^{r/2}/nu) q(z1)) ((g/2)^{r'} - |z2 + g/2|^{r'}) / r',
/// the exact solution of the transverse two-point problem; vanishes at z2 = 0
/// and z2 = -g(z1).  Throws a domain error outside the film.
double film_velocity_profile(double z1, double z2, const ReynoldsSolution& sol,
                             const ReynoldsProblem& problem);

/// Max over k polynomial test functions of the weak form evaluated on the
/// sampled solution (the constant-flux part is integrated exactly).
double weak_form_residual(const ReynoldsSolution& sol, const ReynoldsProblem& problem, int k = 8);

/// CSV with columns (z1, p_star, q_flux, V_av_1, Vfilm_av_1, G).
std::string reynolds_csv(const ReynoldsSolution& sol, const ReynoldsProblem& problem);

/// Cumulative integral of uniformly sampled values (spacing dz), fourth-order
/// three-point rule per step; result[0] = 0.  Exposed for reuse in tests.
std::vector<double> cumulative_integral(const std::vector<double>& values, double dz);

} // namespace porolub
