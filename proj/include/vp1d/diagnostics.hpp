#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vp1d/grid.hpp"
#include "vp1d/particle_set.hpp"
#include "vp1d/validity.hpp"

namespace vp1d {

/// Per-step observables. sup_field is NaN once the valid interval is
/// exhausted; all arrays share one length.
struct DiagnosticsSeries {
    std::vector<double> times;
    std::vector<double> sup_field;
    std::vector<double> energy;
    std::vector<double> grid_half_length;
    std::vector<double> valid_half_width;

    std::size_t size() const { return times.size(); }
};

/// Kinetic part uses the time-centered product V^{n-1/2}·V^{n+1/2}, which is
/// second-order at t^n and exactly constant for ballistic motion; field part
/// is the midpoint rule for (1/2)∫E² over the current grid.
inline double net_energy(const ParticleSet& p, const FieldGrid& grid) {
    long double kinetic = 0.0;
    const std::size_t n = p.count();
    for (std::size_t i = 0; i < n; ++i)
        kinetic += 0.5L * p.charges[i] * p.prev_velocities[i] * p.velocities[i];
    long double field = 0.0;
    for (double e : grid.field)
        field += 0.5L * e * e * grid.spacing;
    return static_cast<double>(kinetic + field);
}

/// max |E_l| over gridpoints inside the interval.
inline double sup_field(const FieldGrid& grid, const Interval& valid) {
    double m = 0.0;
    for (std::size_t l = 0; l < grid.size(); ++l)
        if (valid.contains(grid.point(static_cast<long>(l))))
            m = std::max(m, std::fabs(grid.field[l]));
    return m;
}

/// sup_l |E_l - analytic(x_l)| over gridpoints inside the interval.
inline double steady_error(const FieldGrid& grid, const std::function<double(double)>& analytic,
                           const Interval& valid) {
    if (!analytic)
        throw std::invalid_argument("steady_error: scenario provides no analytic field");
    double m = 0.0;
    for (std::size_t l = 0; l < grid.size(); ++l) {
        const double x = grid.point(static_cast<long>(l));
        if (valid.contains(x))
            m = std::max(m, std::fabs(grid.field[l] - analytic(x)));
    }
    return m;
}

/// Least-squares slope of log(error) against log(mesh) over nested
/// (successively halved) mesh levels; ~2 for this scheme.
inline double convergence_rate(const std::vector<std::pair<double, double>>& mesh_error) {
    if (mesh_error.size() < 2)
        throw std::invalid_argument("convergence_rate: need at least two mesh levels");
    for (std::size_t i = 1; i < mesh_error.size(); ++i) {
        const double ratio = mesh_error[i - 1].first / mesh_error[i].first;
        if (std::fabs(ratio - 2.0) > 1e-9)
            throw std::invalid_argument("convergence_rate: meshes must halve between levels");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(mesh_error.size());
    for (const auto& [mesh, err] : mesh_error) {
        const double x = std::log(mesh);
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Power-law fit C·t^p to the envelope peaks of a sup-field series.
struct DecayFit {
    double coefficient = 0.0;
    double exponent = 0.0;
    double residual = 0.0;  // rms log-space residual
    Interval window;
    std::size_t peak_count = 0;
    std::vector<std::pair<double, double>> peaks;  // (time, value)
};

/// A peak is a sample strictly greater than its left neighbor that the
/// series then drops below; plateaus report their leftmost sample. NaN
/// samples (post-exhaustion) terminate the scan.
inline std::vector<std::pair<double, double>> envelope_peaks(const std::vector<double>& times,
                                                             const std::vector<double>& values) {
    std::vector<std::pair<double, double>> peaks;
    const std::size_t n = std::min(times.size(), values.size());
    std::size_t i = 1;
    while (i + 1 < n) {
        if (std::isnan(values[i]))
            break;
        if (values[i] > values[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && values[j + 1] == values[i])
                ++j;
            if (j + 1 < n && !std::isnan(values[j + 1]) && values[j + 1] < values[i])
                peaks.emplace_back(times[i], values[i]);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return peaks;
}

inline DecayFit fit_decay(const DiagnosticsSeries& series, const Interval& window) {
    if (!(window.lo < window.hi))
        throw std::invalid_argument("fit_decay: empty time window");
    if (series.times.empty() || window.hi < series.times.front() ||
        window.lo > series.times.back())
        throw std::invalid_argument("fit_decay: window lies outside the recorded times");
    auto all = envelope_peaks(series.times, series.sup_field);
    DecayFit fit;
    fit.window = window;
    for (const auto& [t, v] : all)
        if (t >= window.lo && t <= window.hi && v > 0.0)
            fit.peaks.emplace_back(t, v);
    fit.peak_count = fit.peaks.size();
    if (fit.peak_count < 2)
        throw std::runtime_error("fit_decay: fewer than two envelope peaks in the window");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [t, v] : fit.peaks) {
        const double x = std::log(t);
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(fit.peak_count);
    const double denom = n * sxx - sx * sx;
    fit.exponent = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.exponent * sx) / n;
    fit.coefficient = std::exp(intercept);

    double ss = 0.0;
    for (const auto& [t, v] : fit.peaks) {
        const double r = std::log(v) - (intercept + fit.exponent * std::log(t));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

} // namespace vp1d
