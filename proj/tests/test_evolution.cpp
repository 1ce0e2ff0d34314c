#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "wavecons/evolution.hpp"
#include "wavecons/scenario.hpp"

using namespace wavecons;
using Catch::Matchers::WithinAbs;

namespace {

const PeriodicGrid grid = make_grid(128, 40.0, -20.0);

PhysicalParams base_params() {
    PhysicalParams p;
    p.g = 1.0;
    p.h = 1.0;
    return p;
}

SolverConfig base_config() {
    SolverConfig c;
    c.dt = 5e-3;
    c.dno_order = 4;
    // Solver-mechanics tests use pulses whose tails exceed the strict decay
    // guard on this small box; the guard has its own dedicated test.
    c.edge_guard_threshold = 1e-6;
    return c;
}

SurfaceState gaussian_state(double eta_amp, double q_amp, double center_eta = 0.0,
                            double center_q = 0.0) {
    RealField eta(grid), q(grid);
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.node(j);
        eta[j] = eta_amp * std::exp(-std::pow((x - center_eta) / 3.0, 2));
        q[j] = q_amp * std::exp(-std::pow((x - center_q) / 3.0, 2));
    }
    return {0.0, std::move(eta), std::move(q)};
}

}  // namespace

TEST_CASE("surface velocity inversion") {
    SECTION("flat surface reduces to (q_x, Gq)") {
        const SurfaceState s = gaussian_state(0.0, 0.1);
        const RealField Gq = dno_apply(s.eta, s.q, 1.0, 4);
        auto [X, Z] = surface_velocities(s.eta, s.q, Gq);
        const RealField qx = derivative(s.q, 1);
        for (int j = 0; j < grid.n_points; ++j) {
            CHECK_THAT(X[j], WithinAbs(qx[j], 1e-14));
            CHECK_THAT(Z[j], WithinAbs(Gq[j], 1e-14));
        }
    }
    SECTION("zero data gives zero velocities") {
        auto [X, Z] = surface_velocities(RealField(grid, 0.0), RealField(grid, 0.0),
                                         RealField(grid, 0.0));
        CHECK(X.max_abs() == 0.0);
        CHECK(Z.max_abs() == 0.0);
    }
    SECTION("reconstruction identities hold for arbitrary smooth triples") {
        const RealField eta = oracles::random_band_limited(grid, 3u, 10, 0.05);
        const RealField q = oracles::random_band_limited(grid, 5u, 10, 0.2);
        const RealField Gq = oracles::random_band_limited(grid, 7u, 10, 0.2);
        auto [X, Z] = surface_velocities(eta, q, Gq);
        const RealField eta_x = derivative(eta, 1);
        const RealField q_x = derivative(q, 1);
        for (int j = 0; j < grid.n_points; ++j) {
            CHECK_THAT(q_x[j], WithinAbs(X[j] + eta_x[j] * Z[j], 1e-12));
            CHECK_THAT(Gq[j], WithinAbs(Z[j] - eta_x[j] * X[j], 1e-12));
        }
    }
}

TEST_CASE("surface tension term") {
    SECTION("sigma = 0 and flat surfaces give zero") {
        CHECK(surface_tension_term(RealField(grid, 0.0), 0.7).max_abs() == 0.0);
        const RealField bump = gaussian_state(0.05, 0.0).eta;
        CHECK(surface_tension_term(bump, 0.0).max_abs() == 0.0);
    }
    SECTION("small-amplitude cosine follows -sigma a k^2 cos(kx)") {
        const double a = 1e-6, sigma = 0.5;
        const double k = 2.0 * M_PI * 3.0 / grid.length;
        RealField eta(grid);
        for (int j = 0; j < grid.n_points; ++j) eta[j] = a * std::cos(k * grid.node(j));
        const RealField term = surface_tension_term(eta, sigma);
        for (int j = 0; j < grid.n_points; ++j)
            CHECK_THAT(term[j],
                       WithinAbs(-sigma * a * k * k * std::cos(k * grid.node(j)),
                                 1e-10 * sigma * a * k * k + 1e-18));
    }
}

TEST_CASE("right-hand sides") {
    const PhysicalParams params = base_params();
    const SolverConfig config = base_config();

    SECTION("rest state is an equilibrium for both families") {
        const SurfaceState rest{0.0, RealField(grid, 0.0), RealField(grid, 0.0)};
        const SurfaceRhs r1 = rhs_irrotational(rest, params, config);
        CHECK(r1.eta_t.max_abs() == 0.0);
        CHECK(r1.q_t.max_abs() == 0.0);
        PhysicalParams sheared = params;
        sheared.omega = 0.9;
        const SurfaceRhs r2 = rhs_constant_vorticity(rest, sheared, config);
        CHECK(r2.eta_t.max_abs() == 0.0);
        CHECK(r2.q_t.max_abs() == 0.0);
    }
    SECTION("linearized response of a tiny cosine") {
        const double a = 1e-8;
        const double k = 2.0 * M_PI * 3.0 / grid.length;
        RealField eta(grid);
        for (int j = 0; j < grid.n_points; ++j) eta[j] = a * std::cos(k * grid.node(j));
        SolverConfig open = config;
        open.edge_guard_threshold = 1e9;
        const SurfaceState s{0.0, eta, RealField(grid, 0.0)};
        const SurfaceRhs r = rhs_irrotational(s, params, open);
        CHECK(r.eta_t.max_abs() < 1e-14);  // q = 0 so G q = 0
        for (int j = 0; j < grid.n_points; ++j)
            CHECK_THAT(r.q_t[j], WithinAbs(-params.g * eta[j], 1e-15 + a * a));
    }
    SECTION("omega -> 0 reduction is exact") {
        const SurfaceState s = gaussian_state(0.03, 0.05, -1.0, 2.0);
        const SurfaceRhs lhs = rhs_constant_vorticity(s, params, config);
        const SurfaceRhs rhs = rhs_irrotational(s, params, config);
        for (int j = 0; j < grid.n_points; ++j) {
            CHECK_THAT(lhs.eta_t[j], WithinAbs(rhs.eta_t[j], 1e-16));
            CHECK_THAT(lhs.q_t[j], WithinAbs(rhs.q_t[j], 1e-16));
        }
    }
    SECTION("edge guard rejects data at the seam") {
        RealField eta(grid, 0.0);
        eta[0] = 1e-3;
        const SurfaceState s{0.0, eta, RealField(grid, 0.0)};
        CHECK_THROWS_WITH(rhs_irrotational(s, params, config),
                          Catch::Matchers::ContainsSubstring("edge guard"));
    }
    SECTION("rhs_irrotational refuses omega != 0") {
        PhysicalParams sheared = params;
        sheared.omega = 0.1;
        const SurfaceState s = gaussian_state(0.01, 0.0);
        CHECK_THROWS_AS(rhs_irrotational(s, sheared, config), std::invalid_argument);
    }
}

TEST_CASE("RK4 stepping") {
    const PhysicalParams params = base_params();
    SolverConfig config = base_config();

    SECTION("rest state is a fixed point") {
        const SurfaceState rest{0.0, RealField(grid, 0.0), RealField(grid, 0.0)};
        const SurfaceState next = step_rk4(rest, params, config, rhs_irrotational);
        CHECK(next.eta.max_abs() == 0.0);
        CHECK(next.q.max_abs() == 0.0);
        CHECK_THAT(next.t, WithinAbs(config.dt, 1e-15));
    }
    SECTION("one-step error drops ~16x when dt halves (Richardson)") {
        const SurfaceState s0 = gaussian_state(0.05, 0.03);
        SolverConfig ref = config;
        ref.dt = 2.5e-4;
        SurfaceState reference = s0;
        for (int i = 0; i < 64; ++i) reference = step_rk4(reference, params, ref, rhs_irrotational);

        auto err_with_dt = [&](double dt, int steps) {
            SolverConfig c = config;
            c.dt = dt;
            SurfaceState s = s0;
            for (int i = 0; i < steps; ++i) s = step_rk4(s, params, c, rhs_irrotational);
            double e = 0.0;
            for (int j = 0; j < grid.n_points; ++j)
                e = std::max(e, std::abs(s.eta[j] - reference.eta[j]));
            return e;
        };
        const double e1 = err_with_dt(1.6e-2, 1);
        const double e2 = err_with_dt(8e-3, 2);
        CHECK(e1 / e2 > 11.0);
        CHECK(e1 / e2 < 22.0);
    }
    SECTION("mass is static to roundoff across a step") {
        const SurfaceState s0 = gaussian_state(0.05, 0.02);
        const double m0 = integrate(s0.eta);
        const SurfaceState s1 = step_rk4(s0, params, config, rhs_irrotational);
        CHECK_THAT(integrate(s1.eta) - m0, WithinAbs(0.0, 1e-13 * std::max(1.0, std::abs(m0))));
    }
    SECTION("non-finite states abort with the stage named") {
        RealField eta(grid, 0.0);
        eta[4] = std::numeric_limits<double>::quiet_NaN();
        const SurfaceState bad{0.0, eta, RealField(grid, 0.0)};
        CHECK_THROWS_AS(step_rk4(bad, params, config, rhs_irrotational), std::runtime_error);
    }
}

TEST_CASE("canonical variable transform") {
    SECTION("omega = 0 returns q untouched") {
        const RealField q = oracles::random_band_limited(grid, 11u, 12, 0.3);
        const RealField z = to_canonical(q, RealField(grid, 0.0), 0.0);
        for (int j = 0; j < grid.n_points; ++j) CHECK(z[j] == q[j]);
    }
    SECTION("cosine elevation with omega = 2") {
        const double k = 2.0 * M_PI * 5.0 / grid.length;
        RealField eta(grid);
        for (int j = 0; j < grid.n_points; ++j) eta[j] = std::cos(k * grid.node(j));
        const RealField zeta = to_canonical(RealField(grid, 0.0), eta, 2.0);
        for (int j = 0; j < grid.n_points; ++j)
            CHECK_THAT(zeta[j], WithinAbs(-std::sin(k * grid.node(j)) / k, 1e-12));
    }
    SECTION("round trip") {
        const double om = 0.7;
        RealField eta = oracles::random_band_limited(grid, 13u, 10, 0.02);
        const double m = mean(eta);
        for (int j = 0; j < grid.n_points; ++j) eta[j] -= m;
        const RealField q = oracles::random_band_limited(grid, 17u, 10, 0.1);
        const RealField zeta = to_canonical(q, eta, om);
        const RealField back = zeta + (0.5 * om) * decaying_antiderivative(eta);
        for (int j = 0; j < grid.n_points; ++j) CHECK_THAT(back[j], WithinAbs(q[j], 1e-12));
    }
}

TEST_CASE("run orchestration") {
    const PhysicalParams params = base_params();
    SolverConfig config = base_config();

    SECTION("zero-length run returns only the initial snapshot") {
        const SurfaceState s0 = gaussian_state(0.03, 0.0);
        const TimeSeries ts = run(s0, params, config, 0.0, 10);
        REQUIRE(ts.snapshots.size() == 1);
        CHECK(ts.snapshots[0].state.t == 0.0);
    }
    SECTION("snapshots appear at the observer cadence including the last step") {
        const SurfaceState s0 = gaussian_state(0.03, 0.0);
        const TimeSeries ts = run(s0, params, config, 50 * config.dt, 20);
        REQUIRE(ts.snapshots.size() == 4);  // steps 0, 20, 40, 50
        CHECK_THAT(ts.snapshots.back().state.t, WithinAbs(50 * config.dt, 1e-12));
    }
    SECTION("forward then backward integration returns the initial state") {
        const SurfaceState s0 = gaussian_state(0.04, 0.02);
        SurfaceState s = s0;
        for (int i = 0; i < 100; ++i) s = step_rk4(s, params, config, rhs_irrotational);
        SolverConfig back = config;
        back.dt = -config.dt;
        for (int i = 0; i < 100; ++i) s = step_rk4(s, params, back, rhs_irrotational);
        double gap = 0.0;
        for (int j = 0; j < grid.n_points; ++j)
            gap = std::max({gap, std::abs(s.eta[j] - s0.eta[j]), std::abs(s.q[j] - s0.q[j])});
        CHECK(gap < 1e-9);
    }
    SECTION("integer grid shifts commute with the evolution") {
        const int shift = 9;
        const SurfaceState s0 = gaussian_state(0.05, 0.03, -2.0, 1.0);
        SurfaceState shifted0{0.0, RealField(grid, 0.0), RealField(grid, 0.0)};
        for (int j = 0; j < grid.n_points; ++j) {
            shifted0.eta[(j + shift) % grid.n_points] = s0.eta[j];
            shifted0.q[(j + shift) % grid.n_points] = s0.q[j];
        }
        SurfaceState a = s0, b = shifted0;
        for (int i = 0; i < 20; ++i) {
            a = step_rk4(a, params, config, rhs_irrotational);
            b = step_rk4(b, params, config, rhs_irrotational);
        }
        double gap = 0.0;
        for (int j = 0; j < grid.n_points; ++j)
            gap = std::max(gap, std::abs(b.eta[(j + shift) % grid.n_points] - a.eta[j]));
        CHECK(gap < 1e-11);
    }
}

TEST_CASE("linear dispersion against the small-matrix eigen-oracle") {
    // Tiny-amplitude single mode; the fitted oscillation frequencies must
    // match the linearized system's eigenfrequencies.
    Scenario sc;
    sc.name = "dispersion_test";
    sc.n_points = 128;
    sc.length = 40.0;
    sc.x_min = -20.0;
    sc.initial_is_gaussian = false;
    sc.cosine.amplitude = 1e-8;
    sc.cosine.mode_index = 4;
    sc.solver.dt = 5e-3;
    sc.solver.edge_guard_threshold = 1e9;
    sc.t_end = 10.0;
    sc.observer_cadence = 10;

    const double k = 2.0 * M_PI * sc.cosine.mode_index / sc.length;

    SECTION("irrotational: sqrt(g k tanh(kh)) to 1e-4 relative") {
        const SurfaceState s0 = build_initial_state(sc);
        const TimeSeries ts = run(s0, sc.params, sc.solver, sc.t_end, sc.observer_cadence);
        std::vector<std::complex<double>> series;
        for (const Snapshot& snap : ts.snapshots)
            series.push_back(spectrum(snap.state.eta)[static_cast<size_t>(sc.cosine.mode_index)]);
        const auto freqs = oracles::prony_two_frequencies(series, ts.dt_observer);
        const double exact = std::sqrt(sc.params.g * k * std::tanh(k * sc.params.h));
        CHECK_THAT(freqs[0], WithinAbs(exact, 1e-4 * exact));
        CHECK_THAT(freqs[1], WithinAbs(exact, 1e-4 * exact));
    }
    SECTION("constant vorticity: eigenproblem frequencies to 1e-3 relative") {
        Scenario sv = sc;
        sv.params.omega = 0.5;
        const SurfaceState s0 = build_initial_state(sv);
        const TimeSeries ts = run(s0, sv.params, sv.solver, sv.t_end, sv.observer_cadence);
        std::vector<std::complex<double>> series;
        for (const Snapshot& snap : ts.snapshots)
            series.push_back(spectrum(snap.state.eta)[static_cast<size_t>(sv.cosine.mode_index)]);
        const auto fitted = oracles::prony_two_frequencies(series, ts.dt_observer);
        const auto oracle = oracles::linear_shear_frequencies(k, sv.params.g, sv.params.h,
                                                              sv.params.omega);
        CHECK_THAT(fitted[0], WithinAbs(oracle[0], 1e-3 * oracle[0]));
        CHECK_THAT(fitted[1], WithinAbs(oracle[1], 1e-3 * oracle[1]));
    }
}
