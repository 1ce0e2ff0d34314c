#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecons/evolution.hpp"
#include "wavecons/grid.hpp"
#include "wavecons/params.hpp"

namespace wavecons {

/// Configuration errors map to CLI exit code 2, numerical failures to 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GaussianInitial {
    double amplitude = 0.02;
    double width = 4.0;
    double center = 0.0;
    double q_amplitude = 0.0;
};

struct CosineModeInitial {
    double amplitude = 1e-8;
    int mode_index = 8;
};

struct CheckSpec {
    std::string id;
    double tolerance = 0.0;
};

/// One run description. Defaults reproduce the desk-scale reference
/// configuration; a scenario file only has to override what it changes.
struct Scenario {
    std::string name;
    int n_points = 256;
    double length = 100.0;
    double x_min = -50.0;
    PhysicalParams params;
    SolverConfig solver;
    bool initial_is_gaussian = true;
    GaussianInitial gaussian;
    CosineModeInitial cosine;
    double t_end = 10.0;
    int observer_cadence = 40;
    std::vector<CheckSpec> checks;
    bool out_densities_csv = false;
    bool out_residuals_csv = false;
    bool out_summary_json = true;
    bool out_bulk_csv = false;

    PeriodicGrid grid() const { return make_grid(n_points, length, x_min); }

    void validate() const {
        if (name.empty()) throw ConfigError("scenario: name must not be empty");
        params.validate();
        solver.validate();
        if (initial_is_gaussian) {
            if (!(gaussian.width > 0.0))
                throw ConfigError("scenario: initial.gaussian.width must be positive");
            if (!(std::abs(gaussian.amplitude) < params.h))
                throw ConfigError("scenario: initial.gaussian.amplitude must stay below the depth");
        } else {
            if (cosine.mode_index < 1 || cosine.mode_index >= n_points / 2)
                throw ConfigError("scenario: initial.cosine_mode.mode_index out of range");
            if (!(std::abs(cosine.amplitude) < params.h))
                throw ConfigError("scenario: initial.cosine_mode.amplitude must stay below the depth");
        }
        if (!(t_end > 0.0)) throw ConfigError("scenario: run.t_end must be positive");
        if (observer_cadence < 1) throw ConfigError("scenario: run.observer_cadence must be >= 1");
        for (const CheckSpec& c : checks)
            if (!(c.tolerance > 0.0))
                throw ConfigError("scenario: check tolerance for " + c.id + " must be positive");
    }
};

/// Initial data for a scenario.
///
/// Gaussian pulses: eta0 = A exp(-((x-c)/w)^2). When omega != 0 the canonical
/// transform needs dx^{-1} eta, which only exists for zero-mass elevation, so
/// a double-width gaussian of equal mass is subtracted (still decaying below
/// the edge-guard threshold at the reference parameters) and the residual
/// discrete mean is removed exactly.
inline SurfaceState build_initial_state(const Scenario& sc) {
    const PeriodicGrid grid = sc.grid();
    RealField eta(grid), q(grid);
    if (sc.initial_is_gaussian) {
        const GaussianInitial& gi = sc.gaussian;
        for (int j = 0; j < grid.n_points; ++j) {
            const double r = (grid.node(j) - gi.center) / gi.width;
            eta[j] = gi.amplitude * std::exp(-r * r);
            q[j] = gi.q_amplitude * std::exp(-r * r);
        }
        if (sc.params.omega != 0.0) {
            for (int j = 0; j < grid.n_points; ++j) {
                const double r2 = (grid.node(j) - gi.center) / (2.0 * gi.width);
                eta[j] -= 0.5 * gi.amplitude * std::exp(-r2 * r2);
            }
            const double m = mean(eta);
            for (int j = 0; j < grid.n_points; ++j) eta[j] -= m;
        }
    } else {
        const double k = 2.0 * M_PI * sc.cosine.mode_index / grid.length;
        for (int j = 0; j < grid.n_points; ++j)
            eta[j] = sc.cosine.amplitude * std::cos(k * (grid.node(j) - grid.x_min));
    }
    return SurfaceState{0.0, std::move(eta), std::move(q)};
}

namespace detail {

inline int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (size_t j = 1; j <= b.size(); ++j) {
            const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "name",
        "grid.n_points", "grid.length", "grid.x_min",
        "params.g", "params.h", "params.rho", "params.omega", "params.sigma",
        "solver.dno_order", "solver.dt", "solver.dealias",
        "solver.edge_guard_threshold", "solver.edge_guard_fraction",
        "initial.kind",
        "initial.gaussian.amplitude", "initial.gaussian.width",
        "initial.gaussian.center", "initial.gaussian.q_amplitude",
        "initial.cosine_mode.amplitude", "initial.cosine_mode.mode_index",
        "run.t_end", "run.observer_cadence",
        "output.densities_csv", "output.residuals_csv", "output.summary_json",
        "output.bulk_csv",
    };
    return keys;
}

inline const std::map<std::string, std::string>& key_aliases() {
    static const std::map<std::string, std::string> aliases = {
        {"vorticity", "params.omega"},   {"vorticty", "params.omega"},
        {"omega", "params.omega"},       {"surface_tension", "params.sigma"},
        {"sigma", "params.sigma"},       {"gravity", "params.g"},
        {"depth", "params.h"},           {"dt", "solver.dt"},
    };
    return aliases;
}

inline std::string suggestion_for(const std::string& key) {
    auto alias = key_aliases().find(key);
    if (alias != key_aliases().end()) return alias->second;
    std::string best;
    int best_d = 1 << 20;
    for (const std::string& k : known_keys()) {
        const int d = levenshtein(key, k);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    if (best_d <= static_cast<int>(std::max(key.size(), best.size())) / 2) return best;
    return {};
}

inline double parse_real(const std::string& key, const std::string& v, int line) {
    try {
        size_t pos = 0;
        const double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return r;
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": key " + key +
                          " expects a real number, got \"" + v + "\"");
    }
}

inline int parse_int(const std::string& key, const std::string& v, int line) {
    try {
        size_t pos = 0;
        const int r = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return r;
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": key " + key +
                          " expects an integer, got \"" + v + "\"");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v, int line) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError("line " + std::to_string(line) + ": key " + key +
                      " expects true/false, got \"" + v + "\"");
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parse a scenario from the flat dotted-key format:
///
///   # comment
///   name = run_a
///   params.omega = 0.5
///   check.T3_conserved = 1e-8
///
/// Unknown keys are rejected (strict mode) with a suggestion when one is
/// close; type errors carry the line number.
inline Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    bool kind_set = false;
    std::string linebuf;
    int lineno = 0;
    while (std::getline(in, linebuf)) {
        ++lineno;
        std::string line = linebuf;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value, got \"" +
                              line + "\"");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

        if (key == "name") sc.name = val;
        else if (key == "grid.n_points") sc.n_points = detail::parse_int(key, val, lineno);
        else if (key == "grid.length") sc.length = detail::parse_real(key, val, lineno);
        else if (key == "grid.x_min") sc.x_min = detail::parse_real(key, val, lineno);
        else if (key == "params.g") sc.params.g = detail::parse_real(key, val, lineno);
        else if (key == "params.h") sc.params.h = detail::parse_real(key, val, lineno);
        else if (key == "params.rho") sc.params.rho = detail::parse_real(key, val, lineno);
        else if (key == "params.omega") sc.params.omega = detail::parse_real(key, val, lineno);
        else if (key == "params.sigma") sc.params.sigma = detail::parse_real(key, val, lineno);
        else if (key == "solver.dno_order") sc.solver.dno_order = detail::parse_int(key, val, lineno);
        else if (key == "solver.dt") sc.solver.dt = detail::parse_real(key, val, lineno);
        else if (key == "solver.dealias") sc.solver.dealias = detail::parse_bool(key, val, lineno);
        else if (key == "solver.edge_guard_threshold")
            sc.solver.edge_guard_threshold = detail::parse_real(key, val, lineno);
        else if (key == "solver.edge_guard_fraction")
            sc.solver.edge_guard_fraction = detail::parse_real(key, val, lineno);
        else if (key == "initial.kind") {
            if (val == "gaussian") sc.initial_is_gaussian = true;
            else if (val == "cosine_mode") sc.initial_is_gaussian = false;
            else
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": initial.kind must be gaussian or cosine_mode, got \"" + val +
                                  "\"");
            kind_set = true;
        } else if (key == "initial.gaussian.amplitude")
            sc.gaussian.amplitude = detail::parse_real(key, val, lineno);
        else if (key == "initial.gaussian.width")
            sc.gaussian.width = detail::parse_real(key, val, lineno);
        else if (key == "initial.gaussian.center")
            sc.gaussian.center = detail::parse_real(key, val, lineno);
        else if (key == "initial.gaussian.q_amplitude")
            sc.gaussian.q_amplitude = detail::parse_real(key, val, lineno);
        else if (key == "initial.cosine_mode.amplitude")
            sc.cosine.amplitude = detail::parse_real(key, val, lineno);
        else if (key == "initial.cosine_mode.mode_index")
            sc.cosine.mode_index = detail::parse_int(key, val, lineno);
        else if (key == "run.t_end") sc.t_end = detail::parse_real(key, val, lineno);
        else if (key == "run.observer_cadence")
            sc.observer_cadence = detail::parse_int(key, val, lineno);
        else if (key == "output.densities_csv")
            sc.out_densities_csv = detail::parse_bool(key, val, lineno);
        else if (key == "output.residuals_csv")
            sc.out_residuals_csv = detail::parse_bool(key, val, lineno);
        else if (key == "output.summary_json")
            sc.out_summary_json = detail::parse_bool(key, val, lineno);
        else if (key == "output.bulk_csv")
            sc.out_bulk_csv = detail::parse_bool(key, val, lineno);
        else if (key.rfind("check.", 0) == 0) {
            const std::string id = key.substr(6);
            if (id.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty check id");
            sc.checks.push_back({id, detail::parse_real(key, val, lineno)});
        } else {
            std::string msg = "line " + std::to_string(lineno) + ": unknown key \"" + key + "\"";
            const std::string hint = detail::suggestion_for(key);
            if (!hint.empty()) msg += " (did you mean \"" + hint + "\"?)";
            throw ConfigError(msg);
        }
    }
    (void)kind_set;
    sc.validate();
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_scenario: cannot open " + path);
    try {
        return parse_scenario(in);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace wavecons
