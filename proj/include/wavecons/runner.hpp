#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wavecons/bulk_integrals.hpp"
#include "wavecons/contours.hpp"
#include "wavecons/densities.hpp"
#include "wavecons/evolution.hpp"
#include "wavecons/extension.hpp"
#include "wavecons/scenario.hpp"
#include "wavecons/weak_forms.hpp"

namespace wavecons {

struct CheckResult {
    std::string id;
    double metric = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Everything a run produces: density/ledger/contour series, residuals,
/// drift tables, and per-check verdicts. wall_clock_seconds never reaches the
/// serialized artifacts (outputs stay byte-deterministic).
struct RunReport {
    std::string scenario_name;
    PhysicalParams params;
    bool vorticity_columns = false;

    std::vector<double> times;
    std::vector<DensitySample> densities;
    std::optional<DriftReport> drifts;

    std::vector<IdentityResidual> weak_residuals;    // weakA/weakB/vort_* by degree
    std::vector<IdentityResidual> green_residuals;   // idA/idB/third_order/xz_case
    std::vector<std::array<double, 8>> contour_series;
    std::vector<std::array<double, 8>> bulk_series;  // empty unless evaluated
    double i2_contour_bulk_gap = 0.0;                // max |I2 - bulk(grad^2/2+gz)|
    double i7_omega_area_gap = 0.0;                  // max |I7* - omega I3*|
    double i3_mass_gap = 0.0;                        // max |I3* - (mass + hL)|
    double reduction_gap = 0.0;                      // max |vT - T| (omega = 0)
    double edge_guard_peak_value = 0.0;

    std::vector<CheckResult> checks;
    std::string error;  // nonempty when the run aborted
    double wall_clock_seconds = 0.0;

    bool all_checks_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return error.empty();
    }
};

namespace detail {

inline Drift drift_of(const std::vector<std::array<double, 8>>& series, int idx) {
    std::vector<double> v(series.size());
    for (size_t s = 0; s < series.size(); ++s) v[s] = series[s][static_cast<size_t>(idx)];
    return drift_of_series(v);
}

/// Snapshot indices where the pointwise identities are sampled.
inline std::vector<size_t> probe_indices(size_t n_snapshots) {
    if (n_snapshots <= 3) {
        std::vector<size_t> all(n_snapshots);
        for (size_t i = 0; i < n_snapshots; ++i) all[i] = i;
        return all;
    }
    return {0, n_snapshots / 2, n_snapshots - 1};
}

}  // namespace detail

/// Whether the scenario's checks (or outputs) need the 2D bulk quadrature.
inline bool needs_bulk(const Scenario& sc) {
    if (sc.out_bulk_csv) return true;
    for (const CheckSpec& c : sc.checks)
        if (c.id.find("bulk") != std::string::npos) return true;
    return false;
}

/// Run one scenario end to end: integrate, fit extensions per snapshot,
/// evaluate densities, weak-form ledgers (both families), contour and bulk
/// integrals, Green identities, drifts, and the scenario's checks.
inline RunReport run_scenario(const Scenario& sc) {
    const auto t_start = std::chrono::steady_clock::now();
    sc.validate();
    RunReport rep;
    rep.scenario_name = sc.name;
    rep.params = sc.params;
    rep.vorticity_columns = sc.params.omega != 0.0;

    try {
        const SurfaceState state0 = build_initial_state(sc);
        const TimeSeries series = run(state0, sc.params, sc.solver, sc.t_end, sc.observer_cadence);
        const size_t ns = series.snapshots.size();
        const bool do_bulk = needs_bulk(sc);
        const double hL = sc.params.h * sc.length;

        std::vector<HarmonicExtension> exts;
        exts.reserve(ns);
        for (const Snapshot& snap : series.snapshots) {
            exts.push_back(fit_extension(snap.state.eta, snap.state.q, sc.params.h));
            rep.times.push_back(snap.state.t);
            rep.densities.push_back(sample_densities(snap, sc.params));
            rep.edge_guard_peak_value =
                std::max(rep.edge_guard_peak_value,
                         edge_guard_peak(snap.state, sc.solver.edge_guard_fraction));
        }

        for (size_t i = 0; i < ns; ++i) {
            rep.contour_series.push_back(
                contour_integrals(series.snapshots[i].state, exts[i], sc.params));
            if (do_bulk)
                rep.bulk_series.push_back(
                    bulk_integrals(exts[i], series.snapshots[i].state.eta, sc.params));
        }

        if (ns >= 2) rep.drifts = drift_report(rep.densities);

        // Reduction check data: at omega = 0 the canonical variable is q and
        // the vorticity table must collapse onto the irrotational one.
        if (sc.params.omega == 0.0) {
            const int map_irrot[7] = {0, 1, 2, 3, 4, 5, 7};
            for (const DensitySample& d : rep.densities)
                for (int i = 0; i < 7; ++i)
                    rep.reduction_gap = std::max(
                        rep.reduction_gap,
                        std::abs(d.vorticity[static_cast<size_t>(i)] -
                                 d.irrotational[static_cast<size_t>(map_irrot[i])]));
        }

        // Weak-form ledgers; residuals need at least three snapshots.
        if (ns >= 3) {
            for (int n = 0; n <= 3; ++n) {
                std::vector<WeakFormLedger> irrot(ns), vort(ns);
                for (size_t i = 0; i < ns; ++i) {
                    irrot[i] =
                        weak_form_irrotational(series.snapshots[i], exts[i], n, sc.params);
                    vort[i] = weak_form_vorticity(series.snapshots[i], exts[i], n, sc.params);
                }
                rep.weak_residuals.push_back(
                    weak_residual_A(irrot, series.dt_observer, "weakA"));
                rep.weak_residuals.push_back(
                    weak_residual_B(irrot, series.dt_observer, "weakB"));
                if (n >= 1) {
                    rep.weak_residuals.push_back(
                        weak_residual_A(vort, series.dt_observer, "vort_weakA"));
                    rep.weak_residuals.push_back(
                        weak_residual_B(vort, series.dt_observer, "vort_weakB"));
                }
            }
        }

        // Green identities and the contour/bulk energy equality at probe
        // snapshots; both are snapshot-local facts about the fitted extension.
        for (size_t i : detail::probe_indices(ns)) {
            const SurfaceState& st = series.snapshots[i].state;
            for (int fd = 1; fd <= 3; ++fd)
                for (int n = 0; n <= 3; ++n)
                    rep.green_residuals.push_back(green_identity_residual(exts[i], st, fd, n));
            rep.green_residuals.push_back(green_identity_xz_case(exts[i], st));
            const double bulk_e = bulk_gradsq_gz(exts[i], st.eta, sc.params.g);
            rep.i2_contour_bulk_gap = std::max(
                rep.i2_contour_bulk_gap, std::abs(rep.contour_series[i][1] - bulk_e));
        }

        if (do_bulk) {
            for (size_t i = 0; i < ns; ++i) {
                const auto& I = rep.bulk_series[i];
                rep.i7_omega_area_gap =
                    std::max(rep.i7_omega_area_gap, std::abs(I[6] - sc.params.omega * I[2]));
                const double mass = integrate(series.snapshots[i].state.eta);
                rep.i3_mass_gap = std::max(rep.i3_mass_gap, std::abs(I[2] - (mass + hL)));
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        rep.error = e.what();
    }

    // Check evaluation against whatever was computed.
    for (const CheckSpec& spec : sc.checks) {
        CheckResult r{spec.id, std::numeric_limits<double>::infinity(), spec.tolerance, false};
        r.metric = [&]() -> double {
            const std::string& id = spec.id;
            auto drift_irrot = [&](int i) {
                return rep.drifts ? rep.drifts->irrotational[static_cast<size_t>(i)].relative_drift
                                  : r.metric;
            };
            auto drift_vort = [&](int i) {
                return rep.drifts ? rep.drifts->vorticity[static_cast<size_t>(i)].relative_drift
                                  : r.metric;
            };
            if (id == "T1_conserved") return drift_irrot(0);
            if (id == "T2_conserved") return drift_irrot(1);
            if (id == "T3_conserved" || id == "mass_conserved") return drift_irrot(2);
            if (id == "T4_conserved") return drift_irrot(3);
            if (id == "T5_conserved") return drift_irrot(4);
            if (id == "T6_conserved") return drift_irrot(5);
            if (id == "T7_conserved") return drift_irrot(6);
            if (id == "T8_conserved") return drift_irrot(7);
            if (id == "H_conserved")
                return rep.drifts ? rep.drifts->hamiltonian.relative_drift : r.metric;
            if (id == "vT1_conserved") return drift_vort(0);
            if (id == "vT2_conserved") return drift_vort(1);
            if (id == "vT3_conserved") return drift_vort(2);
            if (id == "vT4_conserved") return drift_vort(3);
            if (id == "vT5_conserved") return drift_vort(4);
            if (id == "vT6_conserved") return drift_vort(5);
            if (id == "vT8_conserved") return drift_vort(6);
            if (id == "H_matches_T2") {
                double gap = 0.0;
                for (const DensitySample& d : rep.densities)
                    gap = std::max(gap, std::abs(d.hamiltonian - d.irrotational[1]));
                return rep.densities.empty() ? r.metric : gap;
            }
            if (id == "reduction_omega0") return rep.reduction_gap;
            if (id == "edge_guard_peak") return rep.edge_guard_peak_value;
            if (id == "I2_contour_bulk") return rep.i2_contour_bulk_gap;
            if (id == "I7_bulk_omega_area") return rep.i7_omega_area_gap;
            if (id == "I3_bulk_mass") return rep.i3_mass_gap;
            for (int i = 1; i <= 8; ++i) {
                if (id == "I" + std::to_string(i) + "_bulk_conserved" && !rep.bulk_series.empty())
                    return detail::drift_of(rep.bulk_series, i - 1).relative_drift;
                if (id == "I" + std::to_string(i) + "_contour_conserved" &&
                    !rep.contour_series.empty())
                    return detail::drift_of(rep.contour_series, i - 1).relative_drift;
            }
            for (const IdentityResidual& wr : rep.weak_residuals) {
                const std::string key = wr.id + "_n" + std::to_string(wr.degree) + "_residual";
                if (id == key) return wr.residual;
            }
            if (id == "greens_idA" || id == "greens_idB" || id == "greens_third" ||
                id == "greens_xz") {
                const std::string want = id == "greens_idA"  ? "idA"
                                       : id == "greens_idB"  ? "idB"
                                       : id == "greens_third" ? "third_order"
                                                              : "xz_case";
                double worst = 0.0;
                bool found = false;
                for (const IdentityResidual& gr : rep.green_residuals)
                    if (gr.id == want) {
                        worst = std::max(worst, gr.residual);
                        found = true;
                    }
                return found ? worst : r.metric;
            }
            throw ConfigError("unknown check id \"" + id + "\"");
        }();
        r.pass = rep.error.empty() && r.metric <= r.tolerance;
        rep.checks.push_back(r);
    }

    rep.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

/// Independent runs along one parameter axis. Per-run failures are isolated;
/// the sweep continues. With axis = omega and 0 among the values, the
/// omega = 0 run gets the vorticity-reduction check attached.
inline std::vector<RunReport> sweep(const Scenario& base, const std::string& axis,
                                    const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep: values must be nonempty");
    if (axis != "omega" && axis != "sigma")
        throw ConfigError("sweep: axis must be omega or sigma, got \"" + axis + "\"");
    const bool has_zero_omega =
        axis == "omega" && std::any_of(values.begin(), values.end(),
                                       [](double v) { return v == 0.0; });
    std::vector<RunReport> reports;
    for (double v : values) {
        Scenario sc = base;
        std::ostringstream name;
        name << base.name << "_" << axis << "_" << v;
        sc.name = name.str();
        if (axis == "omega") sc.params.omega = v;
        else sc.params.sigma = v;
        if (has_zero_omega && v == 0.0) {
            bool present = false;
            for (const CheckSpec& c : sc.checks) present |= (c.id == "reduction_omega0");
            if (!present) sc.checks.push_back({"reduction_omega0", 1e-12});
        }
        try {
            reports.push_back(run_scenario(sc));
        } catch (const std::exception& e) {
            RunReport rep;
            rep.scenario_name = sc.name;
            rep.params = sc.params;
            rep.error = e.what();
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

}  // namespace wavecons
