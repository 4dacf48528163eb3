#pragma once

#include <cmath>
#include <stdexcept>

#include "vp1d/config.hpp"
#include "vp1d/grid.hpp"
#include "vp1d/particle_set.hpp"
#include "vp1d/scenario.hpp"

namespace vp1d {

/// Sign multiplying E in the velocity update. The characteristics of the
/// transport equation are dX/dt = v, dV/dt = -E (restoring: the steady-state
/// well confines its particles); the paper's discrete formulas carry +E, kept
/// available for comparison runs.
enum class ForceSign : int {
    restoring = -1,
    paper = +1,
};

constexpr double force_factor(ForceSign s) { return static_cast<double>(static_cast<int>(s)); }

/// One particle per lattice site (i·dx, j·dv) with |i·dx| <= L, |j·dv| <= Q
/// and positive initial density; charge q = f0·dx·dv. Sites with zero weight
/// never contribute to the deposit and are pruned.
inline ParticleSet initialize_particles(const ScenarioSpec& scenario, const SimConfig& cfg) {
    cfg.validate();
    const long ni = cfg.space_cells();
    const long nj = cfg.velocity_cells();
    const double cell = cfg.dx * cfg.dv;

    ParticleSet p;
    for (long i = -ni; i <= ni; ++i) {
        const double x = static_cast<double>(i) * cfg.dx;
        for (long j = -nj; j <= nj; ++j) {
            const double v = static_cast<double>(j) * cfg.dv;
            const double f = scenario.initial_density(x, v);
            if (f > 0.0) {
                p.positions.push_back(x);
                p.velocities.push_back(v);
                p.charges.push_back(f * cell);
            }
        }
    }
    if (p.positions.empty())
        throw std::runtime_error("initialize_particles: no lattice site has positive density");
    p.prev_velocities = p.velocities;
    return p;
}

/// Prime the leap-frog: shift velocities from t = 0 to t^{-1/2} using the
/// initial field, positions untouched. Exactly inverted by a forward half
/// step with the same frozen field.
inline void half_step_back(ParticleSet& p, const FieldInterpolant& field, double dt,
                           ForceSign sign = ForceSign::restoring) {
    const double k = force_factor(sign) * 0.5 * dt;
    const std::size_t n = p.count();
    for (std::size_t i = 0; i < n; ++i)
        p.velocities[i] -= k * field(p.positions[i]);
    p.prev_velocities = p.velocities;
}

/// V^{n+1/2} = V^{n-1/2} + sign·dt·E^n(X^n). Charge weights do not enter the
/// push; they matter only in deposition.
inline void push_velocities(ParticleSet& p, const FieldInterpolant& field, double dt,
                            ForceSign sign = ForceSign::restoring) {
    const double k = force_factor(sign) * dt;
    const std::size_t n = p.count();
    p.prev_velocities = p.velocities;
    for (std::size_t i = 0; i < n; ++i)
        p.velocities[i] += k * field(p.positions[i]);
}

/// X^{n+1} = X^n + dt·V^{n+1/2}.
inline void push_positions(ParticleSet& p, double dt) {
    const std::size_t n = p.count();
    for (std::size_t i = 0; i < n; ++i)
        p.positions[i] += dt * p.velocities[i];
}

/// Largest staggered speed, S^{n+1/2} = sup |V|.
inline double max_speed(const ParticleSet& p) {
    if (p.velocities.empty())
        throw std::invalid_argument("max_speed: empty particle set");
    double m = 0.0;
    for (double v : p.velocities)
        m = std::max(m, std::fabs(v));
    return m;
}

} // namespace vp1d
