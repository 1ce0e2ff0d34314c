#pragma once

// Baked-in acceptance suite. Every criterion is evaluated at its pinned
// tolerance and printed as one PASS/FAIL line; run_acceptance returns false
// if any line fails. The desk-scale reference configuration is the Scenario
// default set: n = 256, L = 100, h = 1, g = 1, rho = 1, gaussian pulse of
// amplitude 0.02 and width 4 at the origin with q0 = 0, dt = 2.5e-3, DNO
// order 4, t_end = 10, observer every 40 steps.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "wavecons/report.hpp"
#include "wavecons/runner.hpp"

namespace wavecons::acceptance {

struct Line {
    std::string id;
    double metric = 0.0;
    double bound = 0.0;
    bool exceedance = false;  // pass means metric > bound instead of <=
    bool pass = false;
};

namespace detail {

inline void eval(std::vector<Line>& lines, const std::string& id, double metric, double bound,
                 bool exceedance = false) {
    Line l{id, metric, bound, exceedance, false};
    l.pass = exceedance ? metric > bound : metric <= bound;
    lines.push_back(l);
}

inline void append_checks(std::vector<Line>& lines, const std::string& prefix,
                          const RunReport& rep) {
    for (const CheckResult& c : rep.checks)
        eval(lines, prefix + "." + c.id, c.metric, c.tolerance);
}

inline double weak_residual_of(const RunReport& rep, const std::string& id, int degree) {
    for (const IdentityResidual& r : rep.weak_residuals)
        if (r.id == id && r.degree == degree) return r.residual;
    return std::numeric_limits<double>::infinity();
}

inline Drift column_drift(const std::vector<std::array<double, 8>>& series, int idx) {
    std::vector<double> v(series.size());
    for (size_t s = 0; s < series.size(); ++s) v[s] = series[s][static_cast<size_t>(idx)];
    return drift_of_series(v);
}

// A4's Delta-t^2 budget: residual <= max(1e-6, C * dt_obs^2) with C pinned
// to 1. The scaling itself is confirmed by the ratio check below.
inline double weak_tolerance(double dt_obs) { return std::max(1e-6, dt_obs * dt_obs); }

}  // namespace detail

/// A1 + the irrotational halves of A4, A5, A6, A8 share one reference run.
inline Scenario reference_scenario(const std::string& name) {
    Scenario sc;
    sc.name = name;
    return sc;
}

inline bool run_acceptance(std::ostream& os) {
    std::vector<Line> lines;
    const double dt_obs = 0.1;  // 40 steps of 2.5e-3
    const double weak_tol = detail::weak_tolerance(dt_obs);

    // ---------------------------------------------------------------- A1/A2
    Scenario a1 = reference_scenario("accept_irrotational");
    for (int i = 1; i <= 8; ++i)
        a1.checks.push_back({"T" + std::to_string(i) + "_conserved", i == 8 ? 1e-5 : 1e-6});
    a1.checks.push_back({"H_matches_T2", 1e-10});
    for (int n = 0; n <= 3; ++n) {
        a1.checks.push_back({"weakA_n" + std::to_string(n) + "_residual", weak_tol});
        a1.checks.push_back({"weakB_n" + std::to_string(n) + "_residual", weak_tol});
    }
    a1.checks.push_back({"greens_idA", 1e-6});
    a1.checks.push_back({"greens_idB", 1e-6});
    a1.checks.push_back({"greens_third", 1e-6});
    a1.checks.push_back({"greens_xz", 1e-6});
    for (int i = 1; i <= 8; ++i)
        a1.checks.push_back({"I" + std::to_string(i) + "_bulk_conserved", 1e-5});
    a1.checks.push_back({"I7_bulk_omega_area", 1e-8});
    a1.checks.push_back({"I3_bulk_mass", 1e-8});
    a1.checks.push_back({"I2_contour_bulk", 1e-6});
    const RunReport rep_a1 = run_scenario(a1);
    for (const CheckResult& c : rep_a1.checks) {
        std::string prefix = "A1";
        if (c.id.rfind("weak", 0) == 0) prefix = "A4";
        else if (c.id.rfind("greens", 0) == 0) prefix = "A5";
        else if (c.id == "I2_contour_bulk") prefix = "A8";
        else if (c.id.rfind("I", 0) == 0) prefix = "A6.omega0";
        detail::eval(lines, prefix + "." + c.id, c.metric, c.tolerance);
    }
    if (!rep_a1.error.empty()) os << "A1 run error: " << rep_a1.error << "\n";

    Scenario a2 = reference_scenario("accept_surface_tension");
    a2.params.sigma = 0.01;
    for (int i : {1, 2, 3, 4, 5, 6, 8})
        a2.checks.push_back({"T" + std::to_string(i) + "_conserved", 1e-6});
    const RunReport rep_a2 = run_scenario(a2);
    detail::append_checks(lines, "A2", rep_a2);
    if (rep_a2.drifts)
        detail::eval(lines, "A2.T7_lost", rep_a2.drifts->irrotational[6].relative_drift, 1e-3,
                     /*exceedance=*/true);
    if (!rep_a2.error.empty()) os << "A2 run error: " << rep_a2.error << "\n";

    // ------------------------------------------------------------------- A3
    Scenario a3 = reference_scenario("accept_vorticity");
    a3.checks.push_back({"I7_bulk_omega_area", 1e-8});
    a3.checks.push_back({"I3_bulk_mass", 1e-8});
    const std::vector<RunReport> reps_a3 = sweep(a3, "omega", {0.0, 0.5});
    const RunReport& rep_a3_0 = reps_a3[0];
    const RunReport& rep_a3_v = reps_a3[1];
    for (const CheckResult& c : rep_a3_0.checks)
        if (c.id == "reduction_omega0") detail::eval(lines, "A3." + c.id, c.metric, c.tolerance);
    if (rep_a3_v.drifts) {
        const char* names[7] = {"vT1", "vT2", "vT3", "vT4", "vT5", "vT6", "vT8"};
        for (int i = 0; i < 7; ++i)
            detail::eval(lines, std::string("A3.") + names[i] + "_conserved",
                         rep_a3_v.drifts->vorticity[static_cast<size_t>(i)].relative_drift,
                         i == 6 ? 1e-4 : 1e-5);
    }
    for (int n = 1; n <= 3; ++n) {
        detail::eval(lines, "A4.vort_weakA_n" + std::to_string(n),
                     detail::weak_residual_of(rep_a3_v, "vort_weakA", n), weak_tol);
        detail::eval(lines, "A4.vort_weakB_n" + std::to_string(n),
                     detail::weak_residual_of(rep_a3_v, "vort_weakB", n), weak_tol);
    }
    for (int i = 1; i <= 8; ++i)
        detail::eval(lines, "A6.omega05.I" + std::to_string(i) + "_bulk_conserved",
                     detail::column_drift(rep_a3_v.bulk_series, i - 1).relative_drift, 1e-5);
    for (const CheckResult& c : rep_a3_v.checks)
        detail::eval(lines, "A6.omega05." + c.id, c.metric, c.tolerance);
    for (const RunReport& r : reps_a3)
        if (!r.error.empty()) os << "A3 run error (" << r.scenario_name << "): " << r.error << "\n";

    // ------------------------------------------------- A4 ratio confirmation
    // Halving the observer spacing must shrink the centered-difference
    // residual by ~4x for every weak form with a genuinely nonzero residual.
    {
        Scenario half = reference_scenario("accept_irrotational_halfobs");
        half.observer_cadence = 20;
        const RunReport rep_half = run_scenario(half);
        Scenario vhalf = reference_scenario("accept_vorticity_halfobs");
        vhalf.params.omega = 0.5;
        vhalf.observer_cadence = 20;
        const RunReport rep_vhalf = run_scenario(vhalf);

        struct Combo {
            const RunReport* coarse;
            const RunReport* fine;
            const char* id;
            int degree;
        };
        std::vector<Combo> combos;
        for (int n = 1; n <= 3; ++n) {
            combos.push_back({&rep_a1, &rep_half, "weakA", n});
            combos.push_back({&rep_a1, &rep_half, "weakB", n});
        }
        for (int n = 2; n <= 3; ++n) {
            combos.push_back({&rep_a3_v, &rep_vhalf, "vort_weakA", n});
            combos.push_back({&rep_a3_v, &rep_vhalf, "vort_weakB", n});
        }
        for (const Combo& c : combos) {
            const double coarse = detail::weak_residual_of(*c.coarse, c.id, c.degree);
            const double fine = detail::weak_residual_of(*c.fine, c.id, c.degree);
            if (coarse < 1e-10) continue;  // below the quadrature noise floor
            detail::eval(lines,
                         std::string("A4.ratio.") + c.id + "_n" + std::to_string(c.degree) +
                             "_in_3_5",
                         coarse / fine, 5.0);
            lines.back().pass = lines.back().pass && coarse / fine >= 3.0;
        }
    }

    // ------------------------------------------------------- A5 single mode
    {
        const PeriodicGrid grid = make_grid(256, 100.0, -50.0);
        HarmonicExtension ext(grid, 1.0);
        ext.cos_coeff(5) = 1.0;
        ext.sin_coeff(7) = 0.5;
        SurfaceState flat{0.0, RealField(grid, 0.0), ext.trace_at_depth(0.0)};
        double worst = 0.0;
        for (int fd = 1; fd <= 3; ++fd)
            for (int n = 0; n <= 3; ++n)
                worst = std::max(worst,
                                 green_identity_residual(ext, flat, fd, n).residual);
        worst = std::max(worst, green_identity_xz_case(ext, flat).residual);
        detail::eval(lines, "A5.flat_single_mode", worst, 1e-10);
    }

    // ------------------------------------------------------------------- A7
    {
        const PeriodicGrid grid = make_grid(256, 100.0, -50.0);
        const double h = 1.0;
        const RealField flat(grid, 0.0);
        double worst = 0.0;
        for (int m = 1; m <= grid.n_points / 3; ++m) {
            const double k = 2.0 * M_PI * m / grid.length;
            RealField q(grid);
            for (int j = 0; j < grid.n_points; ++j) q[j] = std::cos(k * grid.node(j));
            const RealField Gq = dno_apply(flat, q, h, 4);
            const double symbol = k * std::tanh(k * h);
            double err = 0.0;
            for (int j = 0; j < grid.n_points; ++j)
                err = std::max(err, std::abs(Gq[j] - symbol * q[j]));
            worst = std::max(worst, err / symbol);
        }
        detail::eval(lines, "A7.dno_flat_symbol", worst, 1e-12);

        // Cross-check against the collocation extension for a gentle pulse.
        RealField eta(grid), q(grid);
        for (int j = 0; j < grid.n_points; ++j) {
            const double x = grid.node(j);
            eta[j] = 0.01 * std::exp(-(x / 4.0) * (x / 4.0));
            q[j] = 0.02 * std::exp(-((x - 2.0) / 5.0) * ((x - 2.0) / 5.0));
        }
        const RealField Gq = dno_apply(eta, q, h, 4);
        const HarmonicExtension ext = fit_extension(eta, q, h);
        const RealField eta_x = derivative(eta, 1);
        double gap = 0.0, scale = 0.0;
        for (int j = 0; j < grid.n_points; ++j) {
            const BulkSample s = ext.eval_potential(grid.node(j), eta[j]);
            const double direct = s.phi_z - eta_x[j] * s.phi_x;
            gap = std::max(gap, std::abs(direct - Gq[j]));
            scale = std::max(scale, std::abs(direct));
        }
        detail::eval(lines, "A7.dno_extension_cross", gap / scale, 1e-6);

        // Linear dispersion from a tiny-amplitude mode-8 run.
        Scenario disp = reference_scenario("accept_dispersion");
        disp.initial_is_gaussian = false;
        disp.cosine.amplitude = 1e-8;
        disp.cosine.mode_index = 8;
        disp.solver.edge_guard_threshold = 1e9;  // periodic data, no decay
        disp.observer_cadence = 20;
        const SurfaceState s0 = build_initial_state(disp);
        const TimeSeries ts = run(s0, disp.params, disp.solver, disp.t_end,
                                  disp.observer_cadence);
        std::vector<Complex> series;
        for (const Snapshot& snap : ts.snapshots)
            series.push_back(spectrum(snap.state.eta)[8]);
        // Prony fit of the two-exponential signal.
        Complex a11{}, a12{}, a22{}, b1{}, b2{};
        for (size_t m = 0; m + 2 < series.size(); ++m) {
            const Complex x1 = series[m + 1], x2 = series[m], y = series[m + 2];
            a11 += std::conj(x1) * x1;
            a12 += std::conj(x1) * x2;
            a22 += std::conj(x2) * x2;
            b1 += std::conj(x1) * y;
            b2 += std::conj(x2) * y;
        }
        const Complex det = a11 * a22 - a12 * std::conj(a12);
        const Complex p = (b1 * a22 - a12 * b2) / det;
        const Complex r = (a11 * b2 - std::conj(a12) * b1) / det;
        const Complex z1 = 0.5 * (p + std::sqrt(p * p + 4.0 * r));
        const double fitted = std::abs(std::arg(z1)) / ts.dt_observer;
        const double k = 2.0 * M_PI * 8.0 / disp.length;
        const double exact = std::sqrt(disp.params.g * k * std::tanh(k * disp.params.h));
        detail::eval(lines, "A7.linear_dispersion", std::abs(fitted - exact) / exact, 1e-4);
    }

    // ------------------------------------------------------------- printing
    int passed = 0;
    for (const Line& l : lines) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-42s metric=%-12.4e %s%-9.1e %s", l.id.c_str(),
                      l.metric, l.exceedance ? "need>" : "tol<=", l.bound,
                      l.pass ? "PASS" : "FAIL");
        os << buf << "\n";
        if (l.pass) ++passed;
    }
    os << "acceptance: " << passed << "/" << lines.size() << " criteria passed\n";
    return passed == static_cast<int>(lines.size());
}

}  // namespace wavecons::acceptance
