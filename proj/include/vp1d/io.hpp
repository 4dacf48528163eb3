#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "vp1d/config.hpp"
#include "vp1d/diagnostics.hpp"
#include "vp1d/particles.hpp"
#include "vp1d/simulation.hpp"

namespace vp1d {

/// Full declarative run description: mesh/domain plus the harness knobs.
/// Serialized as flat `key = value` lines; parse(render(cfg)) == cfg.
struct RunConfig {
    SimConfig sim;
    std::string scenario = "perturbation";
    ForceSign force_sign = ForceSign::restoring;
    long snapshot_stride = 0;  // 0 = no field snapshots
    std::string output_dir = "out";
    bool continue_past_exhaustion = false;

    bool operator==(const RunConfig&) const = default;
};

/// Shortest decimal form that round-trips the exact double.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw std::runtime_error("format_double failed");
    return std::string(buf, end);
}

inline double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [end, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || end != last)
        throw std::invalid_argument("cannot parse number '" + s + "' for " + context);
    return v;
}

inline std::string render_run_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "dt = " << format_double(cfg.sim.dt) << '\n'
        << "dx = " << format_double(cfg.sim.dx) << '\n'
        << "dv = " << format_double(cfg.sim.dv) << '\n'
        << "L = " << format_double(cfg.sim.L) << '\n'
        << "Q = " << format_double(cfg.sim.Q) << '\n'
        << "T = " << format_double(cfg.sim.T) << '\n'
        << "R = " << format_double(cfg.sim.R) << '\n'
        << "scenario = " << cfg.scenario << '\n'
        << "force_sign = " << static_cast<int>(cfg.force_sign) << '\n'
        << "snapshot_stride = " << cfg.snapshot_stride << '\n'
        << "output_dir = " << cfg.output_dir << '\n'
        << "continue_past_exhaustion = " << (cfg.continue_past_exhaustion ? "true" : "false")
        << '\n';
    return out.str();
}

inline RunConfig parse_run_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos)
                return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        if (trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "dt") cfg.sim.dt = parse_double(value, key);
        else if (key == "dx") cfg.sim.dx = parse_double(value, key);
        else if (key == "dv") cfg.sim.dv = parse_double(value, key);
        else if (key == "L") cfg.sim.L = parse_double(value, key);
        else if (key == "Q") cfg.sim.Q = parse_double(value, key);
        else if (key == "T") cfg.sim.T = parse_double(value, key);
        else if (key == "R") cfg.sim.R = parse_double(value, key);
        else if (key == "scenario") cfg.scenario = value;
        else if (key == "force_sign") {
            if (value == "-1") cfg.force_sign = ForceSign::restoring;
            else if (value == "1" || value == "+1") cfg.force_sign = ForceSign::paper;
            else throw std::invalid_argument("force_sign must be -1 or +1, got '" + value + "'");
        }
        else if (key == "snapshot_stride") {
            const double v = parse_double(value, key);
            if (v < 0 || v != std::floor(v))
                throw std::invalid_argument("snapshot_stride must be a nonnegative integer");
            cfg.snapshot_stride = static_cast<long>(v);
        }
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "continue_past_exhaustion") {
            if (value == "true" || value == "1") cfg.continue_past_exhaustion = true;
            else if (value == "false" || value == "0") cfg.continue_past_exhaustion = false;
            else throw std::invalid_argument("continue_past_exhaustion must be true or false");
        }
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    cfg.sim.validate();
    return cfg;
}

inline RunConfig parse_run_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file " + path.string());
    return parse_run_config(in);
}

inline void write_diagnostics_csv(const std::filesystem::path& path,
                                  const DiagnosticsSeries& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << "step,time,sup_field,energy,grid_half_length,valid_half_width\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << i << ',' << format_double(series.times[i]) << ','
            << (std::isnan(series.sup_field[i]) ? std::string("nan")
                                                : format_double(series.sup_field[i]))
            << ',' << format_double(series.energy[i]) << ','
            << format_double(series.grid_half_length[i]) << ','
            << format_double(series.valid_half_width[i]) << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

inline void write_field_snapshot_csv(const std::filesystem::path& path, const FieldGrid& grid) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << "x,rho,E\n";
    for (std::size_t l = 0; l < grid.size(); ++l)
        out << format_double(grid.point(static_cast<long>(l))) << ','
            << format_double(grid.rho[l]) << ',' << format_double(grid.field[l]) << '\n';
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

/// Diagnostics series read back from CSV (the `fit` subcommand input).
inline DiagnosticsSeries read_diagnostics_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    DiagnosticsSeries series;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path.string() + ": empty file");
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (cells.size() != 6)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 6 columns");
        const std::string ctx = path.string() + ":" + std::to_string(lineno);
        series.times.push_back(parse_double(cells[1], ctx));
        series.sup_field.push_back(cells[2] == "nan"
                                       ? std::numeric_limits<double>::quiet_NaN()
                                       : parse_double(cells[2], ctx));
        series.energy.push_back(parse_double(cells[3], ctx));
        series.grid_half_length.push_back(parse_double(cells[4], ctx));
        series.valid_half_width.push_back(parse_double(cells[5], ctx));
    }
    return series;
}

inline std::uint64_t fnv1a_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string() + " for checksum");
    std::uint64_t h = 1469598103934665603ull;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in)
            break;
    }
    return h;
}

struct RunManifest {
    std::string config_echo;
    std::string scenario;
    long total_steps = 0;
    std::optional<long> exhaustion_step;
    double wall_seconds = 0.0;
    std::vector<std::string> output_files;          // relative to output_dir
    std::vector<std::uint64_t> output_checksums;    // FNV-1a 64
    bool cfl_warning = false;
};

inline void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    nlohmann::json j;
    j["config"] = manifest.config_echo;
    j["scenario"] = manifest.scenario;
    j["total_steps"] = manifest.total_steps;
    if (manifest.exhaustion_step)
        j["exhaustion_step"] = *manifest.exhaustion_step;
    else
        j["exhaustion_step"] = nullptr;
    j["wall_seconds"] = manifest.wall_seconds;
    j["cfl_warning"] = manifest.cfl_warning;
    auto files = nlohmann::json::array();
    for (std::size_t i = 0; i < manifest.output_files.size(); ++i) {
        char hex[17];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(manifest.output_checksums[i]));
        files.push_back({{"path", manifest.output_files[i]}, {"fnv1a64", hex}});
    }
    j["outputs"] = files;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

/// Execute a declarative run end to end: simulate, stream field snapshots at
/// the configured stride, write diagnostics.csv and manifest.json under
/// output_dir. Returns the manifest.
inline RunManifest execute_run(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const auto t0 = std::chrono::steady_clock::now();
    cfg.sim.validate();
    const ScenarioSpec scenario = scenario_by_name(cfg.scenario, cfg.sim);

    fs::create_directories(cfg.output_dir);
    RunManifest manifest;
    manifest.config_echo = render_run_config(cfg);
    manifest.scenario = cfg.scenario;

    std::vector<std::string> snapshots;
    RunOptions options;
    options.force_sign = cfg.force_sign;
    options.continue_past_exhaustion = cfg.continue_past_exhaustion;
    if (cfg.snapshot_stride > 0) {
        options.observer = [&](const StepRecord& rec) {
            if (rec.step % cfg.snapshot_stride == 0) {
                const std::string name = "field_" + std::to_string(rec.step) + ".csv";
                write_field_snapshot_csv(fs::path(cfg.output_dir) / name, rec.grid);
                snapshots.push_back(name);
            }
        };
    }

    RunResult result = run_simulation(cfg.sim, scenario, options);
    manifest.total_steps = result.total_steps;
    manifest.exhaustion_step = result.exhaustion_step;
    manifest.cfl_warning = result.cfl_warning;

    write_diagnostics_csv(fs::path(cfg.output_dir) / "diagnostics.csv", result.series);
    manifest.output_files.push_back("diagnostics.csv");
    for (const auto& name : snapshots)
        manifest.output_files.push_back(name);
    for (const auto& name : manifest.output_files)
        manifest.output_checksums.push_back(fnv1a_file(fs::path(cfg.output_dir) / name));

    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(fs::path(cfg.output_dir) / "manifest.json", manifest);
    return manifest;
}

} // namespace vp1d
