// Smallest useful run: hold the analytic steady state on a coarse mesh and
// print the field error at each step.
#include <cstdio>

#include "vp1d/vp1d.hpp"

int main() {
    vp1d::SimConfig cfg;
    cfg.dt = cfg.dx = cfg.dv = 0.04;
    cfg.L = 2.0;
    cfg.Q = 1.0;
    cfg.T = 0.48;
    cfg.R = 1.0;

    const auto scenario = vp1d::steady_state_scenario();

    vp1d::RunOptions options;
    options.observer = [&](const vp1d::StepRecord& rec) {
        if (!rec.valid)
            return;
        const double err = vp1d::steady_error(rec.grid, scenario.analytic_field, *rec.valid);
        const double sup = vp1d::sup_field(rec.grid, *rec.valid);
        std::printf("t = %4.2f  sup|E| = %.4f  sup|E - E_exact| = %.3e\n", rec.time, sup, err);
    };

    vp1d::run_simulation(cfg, scenario, options);
    return 0;
}
