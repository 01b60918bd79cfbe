/// @file reynolds.cpp
#include "porolub/reynolds.hpp"

#include <cmath>
#include <sstream>

namespace porolub {

void ReynoldsProblem::validate() const {
    if (!f1) throw Error(ErrorCategory::contract, "Reynolds problem needs a force density f1");
    if (!(mu > 0.0)) throw Error(ErrorCategory::domain, "permeability mu must be positive");
    if (!(nu > 0.0)) throw Error(ErrorCategory::domain, "consistency nu must be positive");
    if (!(r > 1.0)) throw Error(ErrorCategory::domain, "flow_index must exceed 1");
    if (!(lambda > 0.0)) throw Error(ErrorCategory::domain, "lambda must be positive");
    if (m < 64) throw Error(ErrorCategory::config, "quadrature must use at least 64 nodes");
    if (!(bracket_scale > 0.0))
        throw Error(ErrorCategory::config, "bracket scale must be positive");
}

double coefficient_G(double z1, const ReynoldsProblem& pb) {
    pb.validate();
    const double rp = pb.rp();
    const double nus = std::pow(pb.nu, rp - 1.0);
    const double film = std::pow(pb.g(z1), rp) /
                        (pb.lambda * std::pow(2.0, 0.5 * rp) * (rp + 1.0) * nus);
    return pb.mu / nus + film;
}

std::vector<double> cumulative_integral(const std::vector<double>& v, double dz) {
    const int m = static_cast<int>(v.size());
    std::vector<double> out(m, 0.0);
    if (m < 3) {
        for (int i = 1; i < m; ++i) out[i] = out[i - 1] + 0.5 * dz * (v[i - 1] + v[i]);
        return out;
    }
    for (int i = 0; i + 1 < m; ++i) {
        double inc;
        if (i + 2 < m)
            inc = dz / 12.0 * (5.0 * v[i] + 8.0 * v[i + 1] - v[i + 2]);
        else
            inc = dz / 12.0 * (-v[i - 1] + 8.0 * v[i] + 5.0 * v[i + 1]);
        out[i + 1] = out[i] + inc;
    }
    return out;
}

namespace {

// dp samples for a given constant flux, and the realized total drop
struct FluxReduction {
    std::vector<double> z, f, G;
    double dz = 0.0;

    explicit FluxReduction(const ReynoldsProblem& pb) {
        const int m = pb.m;
        z.resize(m);
        f.resize(m);
        G.resize(m);
        dz = 1.0 / (m - 1);
        for (int i = 0; i < m; ++i) {
            z[i] = -0.5 + i * dz;
            f[i] = pb.f1(z[i]);
            if (!std::isfinite(f[i]))
                throw Error(ErrorCategory::config, "f1 sample is not finite");
            G[i] = coefficient_G(z[i], pb);
        }
    }

    std::vector<double> dp_for_flux(double q0, double r) const {
        std::vector<double> dp(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) dp[i] = f[i] - power_map(q0 / G[i], r);
        return dp;
    }

    double total_drop(double q0, double r) const {
        const std::vector<double> dp = dp_for_flux(q0, r);
        return cumulative_integral(dp, dz).back();
    }
};

}  // namespace

ReynoldsSolution solve_reynolds(const ReynoldsProblem& pb) {
    pb.validate();
    const FluxReduction red(pb);

    double q0 = 0.0;
    switch (pb.mode) {
        case FluxMode::paper_zero_flux:
            q0 = 0.0;
            break;
        case FluxMode::prescribed_flux:
            q0 = pb.q0;
            break;
        case FluxMode::prescribed_pressure_drop: {
            // Phi(q0) = realized drop - requested drop is strictly decreasing
            auto phi = [&](double q) { return red.total_drop(q, pb.r) - pb.delta_p; };
            double lo = -pb.bracket_scale, hi = pb.bracket_scale;
            double plo = phi(lo), phi_hi = phi(hi);
            while (!(plo >= 0.0 && phi_hi <= 0.0)) {
                lo *= 2.0;
                hi *= 2.0;
                if (std::fabs(hi) > 1e12)
                    throw Error(ErrorCategory::infeasible,
                                "pressure drop unreachable within the flux bracket");
                plo = phi(lo);
                phi_hi = phi(hi);
            }
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (phi(mid) >= 0.0)
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo <= 1e-16 * std::max(1.0, std::fabs(lo) + std::fabs(hi))) break;
            }
            q0 = 0.5 * (lo + hi);
            break;
        }
    }

    ReynoldsSolution sol;
    sol.z = red.z;
    sol.q0 = q0;
    sol.dp = red.dp_for_flux(q0, pb.r);
    sol.p = cumulative_integral(sol.dp, red.dz);

    // mean-zero gauge; the mean uses the same cumulative rule so the shift is
    // as accurate as the pressure itself
    const double mean = cumulative_integral(sol.p, red.dz).back();  // omega has unit length
    for (double& v : sol.p) v -= mean;

    sol.v_av = darcy_velocity(sol, pb);
    sol.vfilm_av = film_average_velocity(sol, pb);
    sol.weak_residual = weak_form_residual(sol, pb, 8);
    return sol;
}

std::vector<double> darcy_velocity(const ReynoldsSolution& sol, const ReynoldsProblem& pb) {
    const double rp = pb.rp();
    const double coef = pb.mu / std::pow(pb.nu, rp - 1.0);
    std::vector<double> v(sol.z.size());
    for (std::size_t i = 0; i < sol.z.size(); ++i) {
        const double q = pb.f1(sol.z[i]) - sol.dp[i];
        v[i] = coef * power_map(q, rp);
    }
    return v;
}

std::vector<double> film_average_velocity(const ReynoldsSolution& sol,
                                          const ReynoldsProblem& pb) {
    const double rp = pb.rp();
    const double nus = std::pow(pb.nu, rp - 1.0);
    const double den = std::pow(2.0, 0.5 * rp) * (rp + 1.0) * nus;
    std::vector<double> v(sol.z.size());
    for (std::size_t i = 0; i < sol.z.size(); ++i) {
        const double q = pb.f1(sol.z[i]) - sol.dp[i];
        v[i] = std::pow(pb.g(sol.z[i]), rp) / den * power_map(q, rp);
    }
    return v;
}

double film_velocity_profile(double z1, double z2, const ReynoldsSolution& sol,
                             const ReynoldsProblem& pb) {
    const double gz = pb.g(z1);
    if (z2 < -gz || z2 > 0.0)
        throw Error(ErrorCategory::domain, "z2 outside the film [-g(z1), 0]");
    const double rp = pb.rp();
    // pointwise flux balance: q(z1) = A_r(q0 / G(z1)) for every z1
    const double q = power_map(sol.q0 / coefficient_G(z1, pb), pb.r);
    const double amp = power_map(std::pow(2.0, 0.5 * pb.r) / pb.nu * q, rp);
    return amp * (std::pow(0.5 * gz, rp) - std::pow(std::fabs(z2 + 0.5 * gz), rp)) / rp;
}

double weak_form_residual(const ReynoldsSolution& sol, const ReynoldsProblem& pb, int k) {
    const double rp = pb.rp();
    const int m = static_cast<int>(sol.z.size());
    const double dz = 1.0 / (m - 1);

    // flux function from the samples; the constant part q0 integrates exactly
    // against every psi', so only the deviation is quadratured
    std::vector<double> flux(m);
    for (int i = 0; i < m; ++i)
        flux[i] = coefficient_G(sol.z[i], pb) * power_map(pb.f1(sol.z[i]) - sol.dp[i], rp);

    double worst = 0.0;
    for (int j = 1; j <= k; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const double w = (i == 0 || i == m - 1) ? 0.5 * dz : dz;
            const double dpsi = j * std::pow(sol.z[i], j - 1);
            acc += w * (flux[i] - sol.q0) * dpsi;
        }
        worst = std::max(worst, std::fabs(acc));
    }
    return worst;
}

std::string reynolds_csv(const ReynoldsSolution& sol, const ReynoldsProblem& pb) {
    std::ostringstream os;
    os.precision(17);
    os << "z1,p_star,q_flux,V_av_1,Vfilm_av_1,G\n";
    for (std::size_t i = 0; i < sol.z.size(); ++i)
        os << sol.z[i] << "," << sol.p[i] << "," << sol.q0 << "," << sol.v_av[i] << ","
           << sol.vfilm_av[i] << "," << coefficient_G(sol.z[i], pb) << "\n";
    return os.str();
}

} // namespace porolub
