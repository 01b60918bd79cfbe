/// @file rheology.cpp
#include "porolub/rheology.hpp"

#include <cmath>

#include "porolub/rational.hpp"

namespace porolub {

const char* to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::config:      return "config";
        case ErrorCategory::domain:      return "domain";
        case ErrorCategory::contract:    return "contract";
        case ErrorCategory::geometry:    return "geometry";
        case ErrorCategory::regime:      return "regime";
        case ErrorCategory::convergence: return "convergence";
        case ErrorCategory::resource:    return "resource";
        case ErrorCategory::infeasible:  return "infeasible";
        case ErrorCategory::alignment:   return "alignment";
        case ErrorCategory::io:          return "io";
    }
    return "unknown";
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const std::int64_t n = std::stoll(s.substr(0, slash));
        const std::int64_t d = std::stoll(s.substr(slash + 1));
        return Rational(n, d);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(s));
    const std::string ip = s.substr(0, dot);
    const std::string fp = s.substr(dot + 1);
    if (fp.size() > 15) throw Error(ErrorCategory::domain, "decimal too long for exact rational: " + s);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
    const bool neg = !ip.empty() && ip[0] == '-';
    std::int64_t whole = ip.empty() || ip == "-" ? 0 : std::stoll(ip);
    std::int64_t frac = fp.empty() ? 0 : std::stoll(fp);
    if (neg) return Rational(whole * den - frac, den);
    return Rational(whole * den + frac, den);
}

double conjugate_exponent(double r) {
    if (!(r > 1.0))
        throw Error(ErrorCategory::domain, "conjugate_exponent requires flow index r > 1");
    return r / (r - 1.0);
}

double power_map(double x, double p) {
    if (!(p > 1.0))
        throw Error(ErrorCategory::domain, "power_map requires exponent p > 1");
    if (x == 0.0) return 0.0;
    const double mag = std::pow(std::fabs(x), p - 1.0);
    return x > 0.0 ? mag : -mag;
}

SymTensor2 tensor_power_map(const SymTensor2& xi, double r) {
    if (!(r > 1.0))
        throw Error(ErrorCategory::domain, "tensor_power_map requires flow index r > 1");
    const double n2 = xi.norm2();
    if (n2 == 0.0) return SymTensor2{};
    const double s = std::pow(n2, 0.5 * (r - 2.0));
    return SymTensor2{s * xi.a11, s * xi.a22, s * xi.a12};
}

SymTensor2 tensor_power_map(double a11, double a12, double a21, double a22, double r) {
    const double scale = std::max({std::fabs(a11), std::fabs(a12), std::fabs(a21), std::fabs(a22), 1.0});
    if (std::fabs(a12 - a21) > 1e-14 * scale)
        throw Error(ErrorCategory::contract, "tensor_power_map requires a symmetric tensor");
    return tensor_power_map(SymTensor2{a11, a22, a12}, r);
}

FluidModel::FluidModel(double r_, double nu_, double delta_) : r(r_), nu(nu_), delta(delta_) {
    if (!(r > 1.0)) throw Error(ErrorCategory::domain, "flow_index must exceed 1");
    if (!(nu > 0.0)) throw Error(ErrorCategory::domain, "consistency nu must be positive");
    if (delta < 0.0) delta = (r < 2.0) ? 1e-8 : 0.0;
}

double regularized_viscosity(double d2, const FluidModel& model) {
    if (d2 < 0.0)
        throw Error(ErrorCategory::contract, "regularized_viscosity requires d2 >= 0");
    if (model.r == 2.0) return model.nu;
    const double base = model.delta * model.delta + d2;
    if (base == 0.0) {
        if (model.r < 2.0)
            throw Error(ErrorCategory::domain,
                        "singular viscosity: delta = 0 and zero strain rate with r < 2");
        return 0.0;  // degenerate but finite for r > 2
    }
    return model.nu * std::pow(base, 0.5 * (model.r - 2.0));
}

} // namespace porolub
