#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "vp1d/config.hpp"
#include "vp1d/particle_set.hpp"
#include "vp1d/scenario.hpp"

namespace vp1d {

/// Uniform spatial grid over [-L^n, L^n] holding the charge density and the
/// electric field at gridpoints x_l = l*dx, |l| <= half_cells. The grid only
/// ever grows (whole cells at a time), so gridpoints stay at integer
/// multiples of dx. The background charge lives on the initial domain
/// [-initial_half_length, initial_half_length] only: the un-simulated
/// exterior is neutral, so newly grown gridpoints carry no background.
struct FieldGrid {
    double spacing = 0.0;
    double initial_half_length = 0.0;
    long half_cells = 0;
    long step = 0;
    std::vector<double> rho;
    std::vector<double> field;

    double half_length() const { return static_cast<double>(half_cells) * spacing; }
    std::size_t size() const { return static_cast<std::size_t>(2 * half_cells + 1); }
    double point(long index) const { return static_cast<double>(index - half_cells) * spacing; }
};

inline FieldGrid make_grid(const SimConfig& cfg) {
    FieldGrid g;
    g.spacing = cfg.dx;
    g.initial_half_length = cfg.L;
    g.half_cells = cfg.space_cells();
    g.rho.assign(g.size(), 0.0);
    g.field.assign(g.size(), 0.0);
    return g;
}

/// First-order (cloud-in-cell) weight: (1/dx)(1 - |x|/dx) on |x| < dx.
inline double cic_weight(double x, double dx) {
    const double a = std::fabs(x) / dx;
    return a < 1.0 ? (1.0 - a) / dx : 0.0;
}

/// Piecewise-linear field evaluation; exactly E_l at gridpoints and zero
/// outside [-L^n, L^n] (plasma neutrality fixes the exterior field).
inline double interpolate_field(const FieldGrid& grid, double x) {
    const double half = grid.half_length();
    if (std::fabs(x) > half)
        return 0.0;
    const double s = (x + half) / grid.spacing;
    const long last = 2 * grid.half_cells;
    // querying a gridpoint must return E_l bit-exactly; the division above
    // can land a hair off the integer index
    const double nearest = std::round(s);
    if (std::fabs(s - nearest) < 1e-9) {
        const long node = std::clamp(static_cast<long>(nearest), 0L, last);
        return grid.field[static_cast<std::size_t>(node)];
    }
    long cell = static_cast<long>(std::floor(s));
    if (cell >= last)
        cell = last - 1;
    if (cell < 0)
        cell = 0;
    const double frac = s - static_cast<double>(cell);
    const std::size_t c = static_cast<std::size_t>(cell);
    return grid.field[c] * (1.0 - frac) + grid.field[c + 1] * frac;
}

/// View adapter so particle pushes depend only on point evaluation.
struct FieldInterpolant {
    const FieldGrid* grid = nullptr;
    double operator()(double x) const { return interpolate_field(*grid, x); }
};

/// Grow the grid so no particle can leave it during the next position push.
/// The increment S*dt is rounded up to whole cells, which keeps deposition
/// stencils uniform and over-covers by < dx per step. New gridpoints start
/// neutral (rho = 0, E = 0): the background there is cancelled by the
/// exterior population the truncation leaves out.
inline void enlarge_grid(FieldGrid& grid, double max_speed, double dt) {
    if (max_speed < 0.0)
        throw std::invalid_argument("enlarge_grid: max_speed must be nonnegative");
    const long grow = static_cast<long>(std::ceil(max_speed * dt / grid.spacing - 1e-12));
    if (grow <= 0)
        return;
    grid.half_cells += grow;
    const std::size_t g = static_cast<std::size_t>(grow);
    grid.rho.insert(grid.rho.begin(), g, 0.0);
    grid.rho.insert(grid.rho.end(), g, 0.0);
    grid.field.insert(grid.field.begin(), g, 0.0);
    grid.field.insert(grid.field.end(), g, 0.0);
}

/// Rebuild the charge density: ρ_l = b(x_l) - Σ q·δ̂(x_l - X). The background
/// is evaluated pointwise on initial-domain gridpoints; each particle
/// scatters onto its two nearest gridpoints (partition of unity, so the
/// deposit conserves Σ q exactly). A particle off the grid is a bookkeeping
/// bug — enlargement runs before every position push precisely to prevent
/// it — and throws.
inline void deposit_charge(const ParticleSet& particles, FieldGrid& grid,
                           const ScenarioSpec& scenario) {
    const double dx = grid.spacing;
    const double half = grid.half_length();
    const long last = 2 * grid.half_cells;
    const double edge_tol = 1e-9 * dx;

    const double bg_limit = grid.initial_half_length + edge_tol;
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const double x = grid.point(static_cast<long>(l));
        grid.rho[l] = std::fabs(x) <= bg_limit ? scenario.background_charge(x) : 0.0;
    }

    const std::size_t n = particles.count();
    for (std::size_t p = 0; p < n; ++p) {
        const double x = particles.positions[p];
        if (std::fabs(x) > half + edge_tol)
            throw std::logic_error("deposit_charge: particle outside the grid (step order bug)");
        const double s = (x + half) / dx;
        const double w = particles.charges[p] / dx;
        // a particle sitting on a gridpoint feeds that node alone
        const double nearest = std::round(s);
        if (std::fabs(s - nearest) < 1e-9) {
            const long node = std::clamp(static_cast<long>(nearest), 0L, last);
            grid.rho[static_cast<std::size_t>(node)] -= w;
            continue;
        }
        long cell = static_cast<long>(std::floor(s));
        if (cell >= last)
            cell = last - 1;
        if (cell < 0)
            cell = 0;
        const double frac = s - static_cast<double>(cell);
        const std::size_t c = static_cast<std::size_t>(cell);
        grid.rho[c] -= w * (1.0 - frac);
        grid.rho[c + 1] -= w * frac;
    }
}

/// Cumulative field integral E_l = ∫_{-∞}^{x_l} ρ. The integrand is the
/// piecewise-linear interpolant of ρ_l extended by zero one cell beyond each
/// end, integrated exactly (composite trapezoid), so the running sum starts
/// at (dx/2)·ρ_first rather than 0: charge sitting on the outermost
/// gridpoint is then counted in full no matter how close particles ride to
/// the boundary. Accumulation in extended precision keeps the neutral-start
/// field at round-off over ~10^4 points.
inline void integrate_field(FieldGrid& grid) {
    const double dx = grid.spacing;
    long double acc = 0.5L * dx * grid.rho.front();
    grid.field.front() = static_cast<double>(acc);
    for (std::size_t l = 1; l < grid.rho.size(); ++l) {
        acc += 0.5L * dx * (grid.rho[l - 1] + grid.rho[l]);
        grid.field[l] = static_cast<double>(acc);
    }
}

} // namespace vp1d
