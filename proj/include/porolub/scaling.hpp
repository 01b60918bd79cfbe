/// @file scaling.hpp
/// @brief Critical-regime arithmetic between eps, h, eta and the flow index r.
///
/// The coupled limit model holds when h ~ eta^{(2r-1)/(r-1)} eps^{-r/(r-1)}
/// with finite positive ratio lambda; this module computes that arithmetic,
/// classifies regimes, generates admissible parameter sequences and exposes
/// the a-priori norm exponents the DNS study is checked against.
#pragma once

#include <vector>

#include "porolub/rational.hpp"

namespace porolub {

struct ScalingRegime {
    double eps = 0.0;
    double h = 0.0;
    double eta = 0.0;
    double r = 2.0;
    double lambda = 0.0;  ///< realized coupling constant h / (eta^{(2r-1)/(r-1)} eps^{-r/(r-1)})
};

enum class RegimeClass { subcritical, critical, supercritical };

struct RegimeClassification {
    RegimeClass classification = RegimeClass::critical;
    double lambda_est = 0.0;
};

/// h = lambda * eta^{(2r-1)/(r-1)} * eps^{-r/(r-1)}.
/// Preconditions: 0 < eps < eta < 1, r > 1, lambda > 0.  The caller checks
/// eps < h < 1 for admissibility; `admissible` reports that check.
double critical_thickness(double eps, double eta, double r, double lambda);

bool regime_admissible(double eps, double h, double eta);

/// lambda_est = h / (eta^{(2r-1)/(r-1)} eps^{-r/(r-1)}); critical iff the
/// estimate falls in the decade band [0.1, 10] (operational proxy for the
/// limit statement -- report lambda_est so callers can apply their own cut).
RegimeClassification classify_regime(double eps, double h, double eta, double r);

/// Predicted a-priori norm exponents in the critical regime, as exact
/// rationals in the rational flow index:
///   ||v||_porous  <= C eps^{r/(r-1)},   ||D v||_porous <= C eps^{1/(r-1)},
///   ||U||_film    <= C eta^{r/(r-1)},   ||D U||_film   <= C eta^{1/(r-1)}.
struct ExponentTable {
    Rational porous_velocity_in_eps;
    Rational porous_gradient_in_eps;
    Rational film_velocity_in_eta;
    Rational film_gradient_in_eta;
};

ExponentTable predicted_exponents(const Rational& r);

/// Exponent of eta in the critical relation: (2r-1)/(r-1).
Rational critical_eta_exponent(const Rational& r);
/// Exponent of 1/eps in the critical relation: r/(r-1).
Rational critical_eps_exponent(const Rational& r);
/// Setting h == 1 in the critical relation yields eta = eps^{r/(2r-1)}.
Rational fissure_eta_exponent(const Rational& r);

/// Default eta exponent s (midpoint of the admissible interval
/// (r/(2r-1), 1)); regime_sequence uses eta = eps^s.
double default_eta_exponent(double r);

/// Build the admissible critical sequence for the given eps list: for each
/// eps choose eta = eps^s, compute h by critical_thickness, and keep entries
/// with eps < h < 1 and eps < eta < 1.  Throws if nothing survives.
std::vector<ScalingRegime> regime_sequence(double r, double lambda,
                                           const std::vector<double>& eps_list,
                                           double s = -1.0);

} // namespace porolub
