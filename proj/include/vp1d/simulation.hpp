#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vp1d/config.hpp"
#include "vp1d/diagnostics.hpp"
#include "vp1d/grid.hpp"
#include "vp1d/particles.hpp"
#include "vp1d/scenario.hpp"
#include "vp1d/validity.hpp"

namespace vp1d {

/// Everything needed to hand a run off and resume it exactly: positions and
/// staggered velocities, the current grid (rho and E at t^n), the validity
/// tracker, and the step index. Chaining two runs through a SimState
/// reproduces one long run to round-off.
struct SimState {
    SimConfig config;
    ParticleSet particles;
    FieldGrid grid;
    ValidityTracker tracker;
    long step = 0;
};

/// Snapshot handed to the per-step observer, valid only during the call.
struct StepRecord {
    long step;
    double time;
    const FieldGrid& grid;
    const ParticleSet& particles;
    std::optional<Interval> valid;
};

struct RunOptions {
    ForceSign force_sign = ForceSign::restoring;
    bool continue_past_exhaustion = false;
    std::function<void(const StepRecord&)> observer;
};

struct RunResult {
    DiagnosticsSeries series;
    long total_steps = 0;
    std::optional<long> exhaustion_step;
    bool cfl_warning = false;
    SimState state;
};

/// Step-by-step leap-frog engine. Construction initializes the lattice,
/// deposits, solves the field at t = 0, and primes the staggered velocities
/// with the backward half step. Each cycle() then runs one step in the
/// paper's order: push velocities with E^n, record S^{n+1/2}, enlarge the
/// grid, push positions, deposit, integrate — the grid grows before
/// positions move so no particle can exit.
class Simulation {
public:
    Simulation(const SimConfig& cfg, ScenarioSpec scenario, RunOptions options = {})
        : scenario_(std::move(scenario)),
          options_(std::move(options)),
          state_{cfg, {}, {}, ValidityTracker(cfg.L, cfg.dt), 0} {
        cfg.validate();
        if (!(cfg.R < cfg.L))
            throw std::invalid_argument("Simulation: perturbation radius R must satisfy R < L");
        state_.particles = initialize_particles(scenario_, cfg);
        state_.grid = make_grid(cfg);
        deposit_charge(state_.particles, state_.grid, scenario_);
        integrate_field(state_.grid);
        half_step_back(state_.particles, FieldInterpolant{&state_.grid}, cfg.dt,
                       options_.force_sign);
    }

    /// Resume from a handed-off state; the scenario is not serializable and
    /// must be supplied again.
    Simulation(SimState state, ScenarioSpec scenario, RunOptions options = {})
        : scenario_(std::move(scenario)), options_(std::move(options)), state_(std::move(state)) {}

    const SimState& state() const { return state_; }
    SimState take_state() && { return std::move(state_); }
    bool cfl_warning() const { return cfl_warning_; }
    bool exhausted() const { return state_.tracker.exhausted(); }

    /// Advance one full leap-frog cycle, appending the step-n row to
    /// `series` before the state moves to t^{n+1}.
    void cycle(DiagnosticsSeries& series) {
        const SimConfig& cfg = state_.config;
        push_velocities(state_.particles, FieldInterpolant{&state_.grid}, cfg.dt,
                        options_.force_sign);
        const double speed = max_speed(state_.particles);
        state_.tracker.record_step(speed);
        record(series);
        if (speed * cfg.dt > cfg.dx * (1.0 + 1e-12))
            cfl_warning_ = true;
        enlarge_grid(state_.grid, speed, cfg.dt);
        push_positions(state_.particles, cfg.dt);
        deposit_charge(state_.particles, state_.grid, scenario_);
        integrate_field(state_.grid);
        state_.grid.step = ++state_.step;
    }

    /// Append the final row without disturbing the hand-off state: the
    /// velocity push and speed record needed by the diagnostics run on
    /// scratch copies.
    void record_final(DiagnosticsSeries& series) {
        ParticleSet scratch_particles = state_.particles;
        ValidityTracker scratch_tracker = state_.tracker;
        push_velocities(scratch_particles, FieldInterpolant{&state_.grid}, state_.config.dt,
                        options_.force_sign);
        scratch_tracker.record_step(max_speed(scratch_particles));
        record_with(series, scratch_particles, scratch_tracker);
    }

private:
    void record(DiagnosticsSeries& series) {
        record_with(series, state_.particles, state_.tracker);
    }

    void record_with(DiagnosticsSeries& series, const ParticleSet& particles,
                     const ValidityTracker& tracker) {
        const double t = static_cast<double>(state_.step) * state_.config.dt;
        const auto valid = tracker.valid_interval();
        series.times.push_back(t);
        series.sup_field.push_back(valid ? sup_field(state_.grid, *valid)
                                         : std::numeric_limits<double>::quiet_NaN());
        series.energy.push_back(net_energy(particles, state_.grid));
        series.grid_half_length.push_back(state_.grid.half_length());
        series.valid_half_width.push_back(std::max(0.0, tracker.half_width()));
        if (options_.observer)
            options_.observer(StepRecord{state_.step, t, state_.grid, particles, valid});
    }

    ScenarioSpec scenario_;
    RunOptions options_;
    SimState state_;
    bool cfl_warning_ = false;
};

/// Run to the stopping time (or to validity exhaustion unless the options
/// ask to continue past it), recording one diagnostics row per step
/// including t = 0 and t = T.
inline RunResult run_simulation(const SimConfig& cfg, const ScenarioSpec& scenario,
                                RunOptions options = {}) {
    Simulation sim(cfg, scenario, options);
    RunResult result{{}, 0, std::nullopt, false, SimState{cfg, {}, {}, ValidityTracker(cfg.L, cfg.dt), 0}};
    const long steps = cfg.step_count();
    bool stopped_early = false;
    for (long n = 0; n < steps; ++n) {
        sim.cycle(result.series);
        ++result.total_steps;
        if (sim.exhausted()) {
            if (!result.exhaustion_step)
                result.exhaustion_step = n;
            if (!options.continue_past_exhaustion) {
                stopped_early = true;
                break;
            }
        }
    }
    if (!stopped_early)
        sim.record_final(result.series);
    result.cfl_warning = sim.cfl_warning();
    result.state = std::move(sim).take_state();
    return result;
}

/// Resume a handed-off state for `extra_time` more simulated time.
inline RunResult resume_simulation(SimState state, const ScenarioSpec& scenario,
                                   double extra_time, RunOptions options = {}) {
    Simulation sim(std::move(state), scenario, options);
    RunResult result{{}, 0, std::nullopt, false, sim.state()};
    const long steps = std::lround(extra_time / sim.state().config.dt);
    bool stopped_early = false;
    for (long n = 0; n < steps; ++n) {
        sim.cycle(result.series);
        ++result.total_steps;
        if (sim.exhausted()) {
            if (!result.exhaustion_step)
                result.exhaustion_step = n;
            if (!options.continue_past_exhaustion) {
                stopped_early = true;
                break;
            }
        }
    }
    if (!stopped_early)
        sim.record_final(result.series);
    result.cfl_warning = sim.cfl_warning();
    result.state = std::move(sim).take_state();
    return result;
}

/// One row of a mesh-convergence study: the steady-state field error at each
/// sample time for one mesh level.
struct ConvergenceLevel {
    double mesh = 0.0;
    std::vector<double> errors;
};

struct ConvergenceStudy {
    std::vector<double> sample_times;
    std::vector<ConvergenceLevel> levels;
    std::vector<double> rates;  // one per sample time
};

/// Runs the steady-state scenario at `levels` successively halved meshes and
/// tabulates sup_l |E - E_exact| over the valid interval at the sample
/// times. The runner is injectable for harness tests.
using SteadyErrorRunner =
    std::function<std::vector<double>(const SimConfig&, const std::vector<double>&)>;

inline std::vector<double> default_steady_error_runner(const SimConfig& cfg,
                                                       const std::vector<double>& sample_times) {
    const ScenarioSpec scenario = steady_state_scenario();
    std::vector<double> errors(sample_times.size(),
                               std::numeric_limits<double>::quiet_NaN());
    RunOptions options;
    options.observer = [&](const StepRecord& rec) {
        for (std::size_t k = 0; k < sample_times.size(); ++k) {
            if (std::fabs(rec.time - sample_times[k]) <= 0.5 * cfg.dt && rec.valid)
                errors[k] = steady_error(rec.grid, scenario.analytic_field, *rec.valid);
        }
    };
    run_simulation(cfg, scenario, options);
    return errors;
}

inline ConvergenceStudy run_convergence_study(const SimConfig& base, int levels,
                                              SteadyErrorRunner runner = {}) {
    if (levels < 2)
        throw std::invalid_argument("run_convergence_study: need at least two mesh levels");
    if (!runner)
        runner = default_steady_error_runner;

    ConvergenceStudy study;
    study.sample_times = {0.0, 0.12, 0.24, 0.36, 0.48};

    SimConfig cfg = base;
    for (int level = 0; level < levels; ++level) {
        cfg.validate();
        study.levels.push_back({cfg.dx, runner(cfg, study.sample_times)});
        cfg.dt *= 0.5;
        cfg.dx *= 0.5;
        cfg.dv *= 0.5;
    }

    for (std::size_t k = 0; k < study.sample_times.size(); ++k) {
        std::vector<std::pair<double, double>> pairs;
        for (const auto& row : study.levels)
            if (k < row.errors.size() && std::isfinite(row.errors[k]) && row.errors[k] > 0.0)
                pairs.emplace_back(row.mesh, row.errors[k]);
        study.rates.push_back(pairs.size() >= 2 ? convergence_rate(pairs)
                                                : std::numeric_limits<double>::quiet_NaN());
    }
    return study;
}

} // namespace vp1d
