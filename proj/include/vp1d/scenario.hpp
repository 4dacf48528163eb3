#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "vp1d/config.hpp"

namespace vp1d {

/// Compactly supported bump A(B - z^2)^3 on |z| < sqrt(B), zero outside.
/// Continuous and C^1 at the support boundary; total (never throws).
inline double bump_profile(double z, double A, double B) {
    const double s = B - z * z;
    return s > 0.0 ? A * s * s * s : 0.0;
}

/// A scenario bundles the initial phase-space density f0(x,v), the fixed
/// positive background as a charge density b(x), and (when a closed form is
/// known) the field and charge density used for validation. All functions
/// are total: they return 0 outside their support, and they are pure, so
/// concurrent evaluation is safe.
struct ScenarioSpec {
    std::string name;
    std::function<double(double, double)> initial_density;
    std::function<double(double)> background_charge;
    std::function<double(double)> analytic_field;  // empty when unknown
    std::function<double(double)> analytic_rho;    // empty when unknown
};

namespace steady {

inline double potential(double x) {
    const double s = 1.0 - x * x;
    return s > 0.0 ? -0.5 * s * s * s : 0.0;
}

inline double field(double x) {
    const double s = 1.0 - x * x;
    return s > 0.0 ? 3.0 * x * s * s : 0.0;
}

inline double rho(double x) {
    const double s = 1.0 - x * x;
    return s > 0.0 ? 3.0 * s * (1.0 - 5.0 * x * x) : 0.0;
}

/// v-integral of the steady f: (2/3)(1-x^2)^{9/2} on (-1,1).
inline double density_marginal(double x) {
    const double s = 1.0 - x * x;
    return s > 0.0 ? (2.0 / 3.0) * std::pow(s, 4.5) : 0.0;
}

} // namespace steady

/// Stationary solution f(x,v) = max(0, -(v^2/2 + U(x))) with
/// U(x) = -(1/2)(1-x^2)^3. The background charge is the v-integral of the
/// paper's x-dependent positive distribution, rho(x) + (2/3)(1-x^2)^{9/2};
/// the Dirac factor in v never appears because only ∫·dv enters the scheme.
inline ScenarioSpec steady_state_scenario() {
    ScenarioSpec s;
    s.name = "steady_state";
    s.initial_density = [](double x, double v) {
        const double e = 0.5 * v * v + steady::potential(x);
        return e < 0.0 ? -e : 0.0;
    };
    s.background_charge = [](double x) {
        return steady::rho(x) + steady::density_marginal(x);
    };
    s.analytic_field = steady::field;
    s.analytic_rho = steady::rho;
    return s;
}

/// Background marginal ∫F(v)dv evaluated as the same Δv Riemann sum that
/// initializes particle charges, so the discrete charges cancel exactly at
/// t = 0 (the field then vanishes to round-off on the initial grid).
inline double lattice_background(const std::function<double(double)>& F, const SimConfig& cfg) {
    const long nv = cfg.velocity_cells();
    double sum = 0.0;
    for (long j = -nv; j <= nv; ++j)
        sum += F(static_cast<double>(j) * cfg.dv);
    return sum * cfg.dv;
}

/// F(v) = (1-v^2)^3 with an odd-in-x perturbation
/// x * U(x,1,1) * U(v, amplitude, 0.6); amplitude = 0.1 is the published
/// run, amplitude = 0 gives the neutral start f0 ≡ F.
inline ScenarioSpec perturbation_scenario(const SimConfig& cfg, double amplitude = 0.1) {
    ScenarioSpec s;
    s.name = amplitude == 0.0 ? "neutral" : "perturbation";
    auto F = [](double v) { return bump_profile(v, 1.0, 1.0); };
    s.initial_density = [F, amplitude](double x, double v) {
        return F(v) + x * bump_profile(x, 1.0, 1.0) * bump_profile(v, amplitude, 0.6);
    };
    const double b = lattice_background(F, cfg);
    s.background_charge = [b](double) { return b; };
    return s;
}

inline ScenarioSpec neutral_scenario(const SimConfig& cfg) {
    return perturbation_scenario(cfg, 0.0);
}

inline ScenarioSpec scenario_by_name(const std::string& name, const SimConfig& cfg) {
    if (name == "steady_state")
        return steady_state_scenario();
    if (name == "perturbation")
        return perturbation_scenario(cfg);
    if (name == "neutral")
        return neutral_scenario(cfg);
    throw std::invalid_argument("unknown scenario '" + name +
                                "' (expected steady_state, perturbation, or neutral)");
}

} // namespace vp1d
