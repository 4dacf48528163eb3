#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "vp1d/diagnostics.hpp"
#include "vp1d/grid.hpp"
#include "vp1d/particles.hpp"
#include "vp1d/scenario.hpp"
#include "vp1d/simulation.hpp"

using Catch::Approx;
using namespace vp1d;

namespace {

FieldGrid zero_grid(double L, double dx) {
    SimConfig cfg;
    cfg.dt = cfg.dx = cfg.dv = dx;
    cfg.L = L;
    cfg.Q = 1.0;
    cfg.T = 1.0;
    cfg.R = 0.5 * L;
    return make_grid(cfg);
}

} // namespace

TEST_CASE("net energy", "[diagnostics]") {
    FieldGrid g = zero_grid(1.0, 0.1);
    ParticleSet p;
    p.positions = {0.0, 0.4};
    p.velocities = {0.0, 0.0};
    p.prev_velocities = {0.0, 0.0};
    p.charges = {1.0, 2.0};

    SECTION("vanishes for a cold, field-free state") {
        CHECK(net_energy(p, g) == 0.0);
    }
    SECTION("ballistic states keep it bitwise constant") {
        p.velocities = {0.5, -0.25};
        p.prev_velocities = p.velocities;
        const double e0 = net_energy(p, g);
        for (int k = 0; k < 100; ++k)
            push_positions(p, 0.1);
        CHECK(net_energy(p, g) == e0);
    }
    SECTION("field term is the midpoint rule") {
        for (auto& e : g.field)
            e = 2.0;
        const double expected = 0.5 * 4.0 * 0.1 * static_cast<double>(g.size());
        CHECK(net_energy(p, g) == Approx(expected).epsilon(1e-14));
    }
    SECTION("kinetic term is time-centered") {
        p.velocities = {0.6, 0.0};
        p.prev_velocities = {0.4, 0.0};
        CHECK(net_energy(p, g) == Approx(0.5 * 1.0 * 0.4 * 0.6).epsilon(1e-14));
    }
}

TEST_CASE("sup field over an interval", "[diagnostics]") {
    FieldGrid g = zero_grid(1.0, 0.1);
    SECTION("zero field") {
        CHECK(sup_field(g, {-1.0, 1.0}) == 0.0);
    }
    SECTION("restriction to a subinterval") {
        for (std::size_t l = 0; l < g.size(); ++l)
            g.field[l] = g.point(static_cast<long>(l));  // E = x
        CHECK(sup_field(g, {-0.5, 0.5}) == Approx(0.5));
        CHECK(sup_field(g, {-1.0, 1.0}) == Approx(1.0));
    }
    SECTION("monotone under nesting") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        for (auto& e : g.field)
            e = d(rng);
        double prev = 0.0;
        for (double w : {0.2, 0.4, 0.6, 0.8, 1.0}) {
            const double s = sup_field(g, {-w, w});
            CHECK(s >= prev);
            prev = s;
        }
    }
}

TEST_CASE("steady error", "[diagnostics]") {
    FieldGrid g = zero_grid(1.0, 0.1);
    const ScenarioSpec sc = steady_state_scenario();
    SECTION("zero when the grid matches the closed form") {
        for (std::size_t l = 0; l < g.size(); ++l)
            g.field[l] = sc.analytic_field(g.point(static_cast<long>(l)));
        CHECK(steady_error(g, sc.analytic_field, {-1.0, 1.0}) == 0.0);
    }
    SECTION("throws without an analytic field") {
        CHECK_THROWS_AS(steady_error(g, nullptr, {-1.0, 1.0}), std::invalid_argument);
    }
    SECTION("analytic field sampled on the mesh stays in the published band") {
        double sup = 0.0;
        for (double x = -1.0; x <= 1.0; x += 0.04)
            sup = std::max(sup, std::fabs(sc.analytic_field(x)));
        CHECK(sup > 0.845);
        CHECK(sup < 0.865);
    }
}

TEST_CASE("convergence rate", "[diagnostics]") {
    SECTION("table-style second order data") {
        CHECK(convergence_rate({{0.04, 8e-3}, {0.02, 2e-3}, {0.01, 5e-4}}) == Approx(2.0));
    }
    SECTION("flat errors rate zero") {
        CHECK(convergence_rate({{0.04, 3e-3}, {0.02, 3e-3}, {0.01, 3e-3}}) ==
              Approx(0.0).margin(1e-12));
    }
    SECTION("errors proportional to the mesh rate one") {
        CHECK(convergence_rate({{0.04, 0.04}, {0.02, 0.02}, {0.01, 0.01}}) == Approx(1.0));
    }
    SECTION("exact on synthetic power laws of any exponent") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> dp(0.2, 3.5);
        for (int trial = 0; trial < 50; ++trial) {
            const double p = dp(rng);
            std::vector<std::pair<double, double>> data;
            double mesh = 0.08;
            for (int lvl = 0; lvl < 4; ++lvl) {
                data.emplace_back(mesh, 2.7 * std::pow(mesh, p));
                mesh *= 0.5;
            }
            CHECK(convergence_rate(data) == Approx(p).epsilon(1e-10));
        }
    }
    SECTION("rejects non-nested meshes and short inputs") {
        CHECK_THROWS_AS(convergence_rate({{0.04, 1e-3}, {0.03, 5e-4}}), std::invalid_argument);
        CHECK_THROWS_AS(convergence_rate({{0.04, 1e-3}}), std::invalid_argument);
    }
}

TEST_CASE("envelope peak extraction", "[diagnostics]") {
    SECTION("interior strict peaks") {
        const std::vector<double> t{0, 1, 2, 3, 4, 5, 6};
        const std::vector<double> y{1, 3, 2, 5, 1, 2, 0};
        const auto peaks = envelope_peaks(t, y);
        REQUIRE(peaks.size() == 3);
        CHECK(peaks[0] == std::pair{1.0, 3.0});
        CHECK(peaks[1] == std::pair{3.0, 5.0});
        CHECK(peaks[2] == std::pair{5.0, 2.0});
    }
    SECTION("plateaus report the leftmost sample") {
        const std::vector<double> t{0, 1, 2, 3, 4};
        const std::vector<double> y{5, 7, 7, 7, 5};
        const auto peaks = envelope_peaks(t, y);
        REQUIRE(peaks.size() == 1);
        CHECK(peaks[0].first == 1.0);
    }
    SECTION("rising shoulders are not peaks") {
        const std::vector<double> t{0, 1, 2, 3};
        const std::vector<double> y{5, 7, 7, 8};
        CHECK(envelope_peaks(t, y).empty());
    }
    SECTION("monotone series has no peaks") {
        const std::vector<double> t{0, 1, 2, 3};
        const std::vector<double> y{8, 4, 2, 1};
        CHECK(envelope_peaks(t, y).empty());
    }
}

namespace {

// oscillation whose local maxima trace C * t^p exactly
DiagnosticsSeries modulated_power_law(double C, double p, double noise, unsigned seed) {
    DiagnosticsSeries s;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> du(-noise, noise);
    int i = 0;
    for (double t = 1.0; t <= 60.0; t += 0.25, ++i) {
        const double env = C * std::pow(t, p) * (1.0 + (noise > 0 ? du(rng) : 0.0));
        s.times.push_back(t);
        s.sup_field.push_back(i % 2 == 0 ? env : 0.4 * env);
        s.energy.push_back(0.0);
        s.grid_half_length.push_back(10.0);
        s.valid_half_width.push_back(5.0);
    }
    return s;
}

} // namespace

TEST_CASE("decay fit", "[diagnostics]") {
    SECTION("recovers a clean 1/t envelope exactly") {
        const auto s = modulated_power_law(3.7e-4, -1.0, 0.0, 0);
        const DecayFit fit = fit_decay(s, {2.0, 50.0});
        CHECK(fit.exponent == Approx(-1.0).margin(1e-12));
        CHECK(fit.coefficient == Approx(3.7e-4).epsilon(1e-12));
        CHECK(fit.residual < 1e-12);
        CHECK(fit.peak_count >= 2);
    }
    SECTION("constant envelope fits exponent zero") {
        const auto s = modulated_power_law(2.0, 0.0, 0.0, 0);
        const DecayFit fit = fit_decay(s, {2.0, 50.0});
        CHECK(fit.exponent == Approx(0.0).margin(1e-12));
    }
    SECTION("one percent multiplicative noise moves the exponent by < 0.05") {
        for (unsigned seed : {1u, 2u, 3u, 4u}) {
            for (double p : {-1.5, -1.0, -0.3, 0.7}) {
                const auto s = modulated_power_law(1e-3, p, 0.01, seed);
                const DecayFit fit = fit_decay(s, {2.0, 50.0});
                CHECK(std::fabs(fit.exponent - p) < 0.05);
            }
        }
    }
    SECTION("too few peaks in the window") {
        const auto s = modulated_power_law(1.0, -1.0, 0.0, 0);
        CHECK_THROWS_AS(fit_decay(s, {59.4, 59.9}), std::runtime_error);
    }
    SECTION("degenerate or out-of-range windows are rejected") {
        const auto s = modulated_power_law(1.0, -1.0, 0.0, 0);
        CHECK_THROWS_AS(fit_decay(s, {30.0, 20.0}), std::invalid_argument);
        CHECK_THROWS_AS(fit_decay(s, {70.0, 80.0}), std::invalid_argument);
    }
    SECTION("post-exhaustion NaNs terminate the scan") {
        auto s = modulated_power_law(1.0, -1.0, 0.0, 0);
        for (std::size_t i = s.size() / 2; i < s.size(); ++i)
            s.sup_field[i] = std::numeric_limits<double>::quiet_NaN();
        const DecayFit fit = fit_decay(s, {2.0, 50.0});
        CHECK(fit.exponent == Approx(-1.0).margin(1e-12));
    }
}
