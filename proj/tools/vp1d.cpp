#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vp1d/vp1d.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& output_dir_override) {
    vp1d::RunConfig cfg = vp1d::parse_run_config_file(config_path);
    if (!output_dir_override.empty())
        cfg.output_dir = output_dir_override;
    const vp1d::RunManifest manifest = vp1d::execute_run(cfg);
    if (manifest.cfl_warning)
        std::cerr << "warning: max particle speed * dt exceeded dx during the run "
                     "(more than one cell per step degrades the deposit)\n";
    std::cout << "scenario " << manifest.scenario << ": " << manifest.total_steps
              << " steps";
    if (manifest.exhaustion_step)
        std::cout << ", validity exhausted at step " << *manifest.exhaustion_step;
    std::cout << "\noutputs in " << cfg.output_dir << " (" << manifest.output_files.size()
              << " files, manifest.json written)\n";
    return 0;
}

int cmd_converge(const std::string& config_path, int levels,
                 const std::string& output_dir_override) {
    vp1d::RunConfig cfg = vp1d::parse_run_config_file(config_path);
    if (!output_dir_override.empty())
        cfg.output_dir = output_dir_override;
    const vp1d::ConvergenceStudy study = vp1d::run_convergence_study(cfg.sim, levels);

    std::printf("%-12s", "mesh \\ t");
    for (double t : study.sample_times)
        std::printf(" %12.2f", t);
    std::printf("\n");
    for (const auto& row : study.levels) {
        std::printf("%-12s", vp1d::format_double(row.mesh).c_str());
        for (double e : row.errors)
            std::printf(" %12.4e", e);
        std::printf("\n");
    }
    std::printf("%-12s", "rate");
    for (double r : study.rates)
        std::printf(" %12.3f", r);
    std::printf("\n");

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const fs::path out = fs::path(cfg.output_dir) / "convergence.csv";
    std::ofstream csv(out, std::ios::binary);
    csv << "mesh";
    for (double t : study.sample_times)
        csv << ",t_" << vp1d::format_double(t);
    csv << '\n';
    for (const auto& row : study.levels) {
        csv << vp1d::format_double(row.mesh);
        for (double e : row.errors)
            csv << ',' << vp1d::format_double(e);
        csv << '\n';
    }
    csv << "rate";
    for (double r : study.rates)
        csv << ',' << vp1d::format_double(r);
    csv << '\n';
    std::cout << "table written to " << out.string() << "\n";
    return 0;
}

int cmd_fit(const std::string& input, double window_lo, double window_hi) {
    const vp1d::DiagnosticsSeries series = vp1d::read_diagnostics_csv(input);
    const vp1d::DecayFit fit = vp1d::fit_decay(series, {window_lo, window_hi});
    std::printf("envelope fit over [%g, %g]: sup|E| ~ C * t^p\n", window_lo, window_hi);
    std::printf("  C = %.6e\n  p = %.4f\n  rms log residual = %.4e\n  peaks = %zu\n",
                fit.coefficient, fit.exponent, fit.residual, fit.peak_count);
    std::printf("  %-10s %-14s %-14s\n", "t", "sup|E|", "sup|E| * t");
    for (const auto& [t, v] : fit.peaks)
        std::printf("  %-10.4f %-14.6e %-14.6e\n", t, v, v * t);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1-D Vlasov-Poisson particle-method simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    auto* run = app.add_subcommand("run", "Run a simulation from a config file");
    run->add_option("--config", config_path, "flat key = value config file")->required();
    run->add_option("--output-dir", output_dir, "override the config's output_dir");

    std::string conv_config;
    std::string conv_output_dir;
    int levels = 3;
    auto* converge = app.add_subcommand("converge", "Steady-state mesh convergence study");
    converge->add_option("--config", conv_config, "base config (coarsest mesh)")->required();
    converge->add_option("--levels", levels, "number of halved mesh levels (>= 2)");
    converge->add_option("--output-dir", conv_output_dir, "override the config's output_dir");

    std::string fit_input;
    std::string window = "12,28";
    auto* fit = app.add_subcommand("fit", "Power-law envelope fit of a diagnostics series");
    fit->add_option("--input", fit_input, "diagnostics.csv path")->required();
    fit->add_option("--window", window, "time window a,b (default 12,28)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, output_dir);
        if (converge->parsed())
            return cmd_converge(conv_config, levels, conv_output_dir);
        if (fit->parsed()) {
            const auto comma = window.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--window expects 'a,b'");
            const double lo = vp1d::parse_double(window.substr(0, comma), "--window");
            const double hi = vp1d::parse_double(window.substr(comma + 1), "--window");
            return cmd_fit(fit_input, lo, hi);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
