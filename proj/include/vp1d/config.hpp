#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace vp1d {

/// Mesh and domain parameters shared by every run.
///
/// The spatial lattice spans [-L, L] in steps of dx and the velocity lattice
/// [-Q, Q] in steps of dv; both ratios must be whole numbers so particles
/// start exactly on gridpoints. R is the radius outside of which the initial
/// density equals the background (neutrality region), R < L.
struct SimConfig {
    double dt = 0.02;
    double dx = 0.02;
    double dv = 0.02;
    double L = 10.0;
    double Q = 1.0;
    double T = 8.0;
    double R = 1.0;

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string(name) + " must be positive and finite");
        };
        positive(dt, "dt");
        positive(dx, "dx");
        positive(dv, "dv");
        positive(L, "L");
        positive(Q, "Q");
        positive(T, "T");
        if (!(R >= 0.0) || !std::isfinite(R))
            throw std::invalid_argument("R must be nonnegative and finite");
        if (!(R < L))
            throw std::invalid_argument("R must be smaller than L");
        if (!aligned(L, dx))
            throw std::invalid_argument("L/dx must be an integer (lattice alignment)");
        if (!aligned(Q, dv))
            throw std::invalid_argument("Q/dv must be an integer (lattice alignment)");
    }

    long space_cells() const { return std::lround(L / dx); }
    long velocity_cells() const { return std::lround(Q / dv); }
    long step_count() const { return std::lround(T / dt); }

    bool operator==(const SimConfig&) const = default;

private:
    static bool aligned(double length, double step) {
        const double ratio = length / step;
        return std::fabs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio);
    }
};

/// Seconds-scale profile used by most tests and examples.
inline SimConfig desk_scale_config() {
    SimConfig cfg;
    cfg.dt = cfg.dx = cfg.dv = 0.02;
    cfg.L = 10.0;
    cfg.Q = 1.0;
    cfg.T = 8.0;
    cfg.R = 1.0;
    return cfg;
}

/// Full-resolution profile (minutes of runtime).
inline SimConfig paper_scale_config() {
    SimConfig cfg;
    cfg.dt = cfg.dx = cfg.dv = 0.01;
    cfg.L = 50.0;
    cfg.Q = 1.0;
    cfg.T = 30.0;
    cfg.R = 1.0;
    return cfg;
}

} // namespace vp1d
