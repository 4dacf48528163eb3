#pragma once

// Deliberately naive reference implementation of the full update cycle:
// gather-style O(particles * gridpoints) deposition, field by an explicit
// per-gridpoint charge sum, straight-line interpolation written from the
// definition. Used to pin the optimized path (acceptance criterion: both
// agree to 1e-10 relative over 100 steps).

#include <cmath>
#include <vector>

#include "vp1d/config.hpp"
#include "vp1d/scenario.hpp"

namespace oracle {

struct ReferenceSim {
    double dt, dx, dv;
    double initial_L;
    double sign;
    long half_cells;
    std::vector<double> x, v, q;
    std::vector<double> rho, E;
    const vp1d::ScenarioSpec* scenario;

    ReferenceSim(const vp1d::SimConfig& cfg, const vp1d::ScenarioSpec& sc, double force_sign)
        : dt(cfg.dt), dx(cfg.dx), dv(cfg.dv), initial_L(cfg.L), sign(force_sign),
          half_cells(cfg.space_cells()), scenario(&sc) {
        const long ni = cfg.space_cells();
        const long nj = cfg.velocity_cells();
        for (long i = -ni; i <= ni; ++i)
            for (long j = -nj; j <= nj; ++j) {
                const double xi = i * cfg.dx;
                const double vj = j * cfg.dv;
                const double f = sc.initial_density(xi, vj);
                if (f > 0.0) {
                    x.push_back(xi);
                    v.push_back(vj);
                    q.push_back(f * cfg.dx * cfg.dv);
                }
            }
        solve_field();
        for (std::size_t p = 0; p < x.size(); ++p)
            v[p] -= sign * eval_field(x[p]) * dt / 2.0;
    }

    double gridpoint(long l) const { return (l - half_cells) * dx; }

    static double hat(double r, double dx) {
        const double a = std::fabs(r);
        return a < dx ? (1.0 - a / dx) / dx : 0.0;
    }

    void solve_field() {
        const long npts = 2 * half_cells + 1;
        rho.assign(npts, 0.0);
        for (long l = 0; l < npts; ++l) {
            const double xl = gridpoint(l);
            double d = std::fabs(xl) <= initial_L + 1e-12 * dx ? scenario->background_charge(xl)
                                                               : 0.0;
            for (std::size_t p = 0; p < x.size(); ++p)
                d -= q[p] * hat(xl - x[p], dx);
            rho[l] = d;
        }
        // E_l = dx * sum_{m<=l} rho_m - (dx/2) rho_l  (zero-extended interpolant)
        E.assign(npts, 0.0);
        double running = 0.0;
        for (long l = 0; l < npts; ++l) {
            running += rho[l] * dx;
            E[l] = running - 0.5 * dx * rho[l];
        }
    }

    double eval_field(double xq) const {
        const double half = half_cells * dx;
        if (std::fabs(xq) > half)
            return 0.0;
        for (long l = 0; l < 2 * half_cells; ++l) {
            const double a = gridpoint(l);
            const double b = gridpoint(l + 1);
            if (xq >= a && xq <= b)
                return E[l] + (E[l + 1] - E[l]) * (xq - a) / (b - a);
        }
        return E[2 * half_cells];
    }

    void step() {
        double S = 0.0;
        for (std::size_t p = 0; p < x.size(); ++p) {
            v[p] += sign * dt * eval_field(x[p]);
            S = std::max(S, std::fabs(v[p]));
        }
        const long grow = static_cast<long>(std::ceil(S * dt / dx - 1e-12));
        half_cells += grow;
        for (std::size_t p = 0; p < x.size(); ++p)
            x[p] += dt * v[p];
        solve_field();
    }
};

} // namespace oracle
