/// @file scaling.cpp
#include "porolub/scaling.hpp"

#include <cmath>
#include <sstream>

namespace porolub {

static double lambda_denominator(double eps, double eta, double r) {
    const double e_eta = (2.0 * r - 1.0) / (r - 1.0);
    const double e_eps = r / (r - 1.0);
    return std::pow(eta, e_eta) * std::pow(eps, -e_eps);
}

double critical_thickness(double eps, double eta, double r, double lambda) {
    if (!(eps > 0.0 && eta > 0.0 && eps < eta && eta < 1.0))
        throw Error(ErrorCategory::regime, "critical_thickness requires 0 < eps < eta < 1");
    if (!(r > 1.0)) throw Error(ErrorCategory::domain, "flow_index must exceed 1");
    if (!(lambda > 0.0)) throw Error(ErrorCategory::domain, "lambda must be positive");
    return lambda * lambda_denominator(eps, eta, r);
}

bool regime_admissible(double eps, double h, double eta) {
    return eps < h && h < 1.0 && eps < eta && eta < 1.0;
}

RegimeClassification classify_regime(double eps, double h, double eta, double r) {
    if (!(eps > 0.0 && eps < 1.0 && h > 0.0 && h < 1.0 && eta > 0.0 && eta < 1.0))
        throw Error(ErrorCategory::regime, "classify_regime requires all parameters in (0,1)");
    if (!(r > 1.0)) throw Error(ErrorCategory::domain, "flow_index must exceed 1");
    RegimeClassification out;
    out.lambda_est = h / lambda_denominator(eps, eta, r);
    if (out.lambda_est < 0.1)
        out.classification = RegimeClass::subcritical;
    else if (out.lambda_est > 10.0)
        out.classification = RegimeClass::supercritical;
    else
        out.classification = RegimeClass::critical;
    return out;
}

ExponentTable predicted_exponents(const Rational& r) {
    if (!(Rational(1) < r))
        throw Error(ErrorCategory::domain, "flow_index must exceed 1");
    const Rational rm1 = r - Rational(1);
    ExponentTable t;
    t.porous_velocity_in_eps = r / rm1;
    t.porous_gradient_in_eps = Rational(1) / rm1;
    t.film_velocity_in_eta = r / rm1;
    t.film_gradient_in_eta = Rational(1) / rm1;
    return t;
}

Rational critical_eta_exponent(const Rational& r) {
    return (Rational(2) * r - Rational(1)) / (r - Rational(1));
}

Rational critical_eps_exponent(const Rational& r) {
    return r / (r - Rational(1));
}

Rational fissure_eta_exponent(const Rational& r) {
    return r / (Rational(2) * r - Rational(1));
}

double default_eta_exponent(double r) {
    const double lo = r / (2.0 * r - 1.0);
    return 0.5 * (lo + 1.0);
}

std::vector<ScalingRegime> regime_sequence(double r, double lambda,
                                           const std::vector<double>& eps_list,
                                           double s) {
    if (!(r > 1.0)) throw Error(ErrorCategory::domain, "flow_index must exceed 1");
    if (!(lambda > 0.0)) throw Error(ErrorCategory::domain, "lambda must be positive");
    if (s < 0.0) s = default_eta_exponent(r);
    const double s_lo = r / (2.0 * r - 1.0);
    if (!(s > s_lo && s < 1.0)) {
        std::ostringstream os;
        os << "eta exponent s = " << s << " must lie in (" << s_lo << ", 1)";
        throw Error(ErrorCategory::config, os.str());
    }

    double prev = 1.0;
    std::vector<ScalingRegime> out;
    std::string dropped;
    for (double eps : eps_list) {
        if (!(eps > 0.0 && eps < 1.0))
            throw Error(ErrorCategory::config, "eps values must lie in (0,1)");
        if (!(eps < prev))
            throw Error(ErrorCategory::config, "eps list must be strictly decreasing");
        prev = eps;

        const double eta = std::pow(eps, s);
        if (!(eps < eta && eta < 1.0)) {
            dropped += " eps=" + std::to_string(eps) + " (eta constraint)";
            continue;
        }
        const double h = critical_thickness(eps, eta, r, lambda);
        if (!regime_admissible(eps, h, eta)) {
            dropped += " eps=" + std::to_string(eps) + " (h constraint)";
            continue;
        }
        ScalingRegime reg;
        reg.eps = eps;
        reg.h = h;
        reg.eta = eta;
        reg.r = r;
        reg.lambda = h / lambda_denominator(eps, eta, r);
        out.push_back(reg);
    }
    if (out.empty())
        throw Error(ErrorCategory::config,
                    "no admissible regime in the eps list; violated constraints:" + dropped);
    return out;
}

} // namespace porolub
