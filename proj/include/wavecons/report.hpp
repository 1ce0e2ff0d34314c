#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wavecons/runner.hpp"

namespace wavecons {

namespace detail {

/// Fixed 17-significant-digit formatting keeps every emitted artifact
/// byte-deterministic across runs.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// densities CSV: t, T1..T8, H and, when the run carries the vorticity
/// family, vT1..vT6, vT8.
inline std::string densities_csv(const RunReport& rep) {
    std::string out = "t,T1,T2,T3,T4,T5,T6,T7,T8,H";
    if (rep.vorticity_columns) out += ",vT1,vT2,vT3,vT4,vT5,vT6,vT8";
    out += "\n";
    for (const DensitySample& d : rep.densities) {
        out += detail::fmt(d.t);
        for (double v : d.irrotational) out += "," + detail::fmt(v);
        out += "," + detail::fmt(d.hamiltonian);
        if (rep.vorticity_columns)
            for (double v : d.vorticity) out += "," + detail::fmt(v);
        out += "\n";
    }
    return out;
}

/// residuals CSV: t, identity, degree, residual, scale. Weak-form and Green
/// residuals are series-level maxima and are emitted at the final time;
/// contour drifts are emitted per snapshot.
inline std::string residuals_csv(const RunReport& rep) {
    std::string out = "t,identity,degree,residual,scale\n";
    const double t_last = rep.times.empty() ? 0.0 : rep.times.back();
    for (const IdentityResidual& r : rep.weak_residuals)
        out += detail::fmt(t_last) + "," + r.id + "," + std::to_string(r.degree) + "," +
               detail::fmt(r.residual) + "," + detail::fmt(r.scale) + "\n";
    for (const IdentityResidual& r : rep.green_residuals)
        out += detail::fmt(t_last) + "," + r.id + "," + std::to_string(r.degree) + "," +
               detail::fmt(r.residual) + "," + detail::fmt(r.scale) + "\n";
    if (!rep.contour_series.empty()) {
        double scale[8] = {};
        for (const auto& row : rep.contour_series)
            for (int i = 0; i < 8; ++i)
                scale[i] = std::max(scale[i], std::abs(row[static_cast<size_t>(i)]));
        for (size_t s = 0; s < rep.contour_series.size(); ++s)
            for (int i = 0; i < 8; ++i)
                out += detail::fmt(rep.times[s]) + ",contour_I" + std::to_string(i + 1) + ",0," +
                       detail::fmt(std::abs(rep.contour_series[s][static_cast<size_t>(i)] -
                                            rep.contour_series[0][static_cast<size_t>(i)])) +
                       "," + detail::fmt(std::max(scale[i], 1e-14)) + "\n";
    }
    return out;
}

/// bulk CSV: t, I1*..I8* followed by the contour I1..I8.
inline std::string bulk_csv(const RunReport& rep) {
    std::string out =
        "t,I1_bulk,I2_bulk,I3_bulk,I4_bulk,I5_bulk,I6_bulk,I7_bulk,I8_bulk,"
        "I1_contour,I2_contour,I3_contour,I4_contour,I5_contour,I6_contour,I7_contour,I8_contour\n";
    for (size_t s = 0; s < rep.contour_series.size(); ++s) {
        out += detail::fmt(rep.times[s]);
        if (s < rep.bulk_series.size())
            for (double v : rep.bulk_series[s]) out += "," + detail::fmt(v);
        else
            out += ",,,,,,,,";
        for (double v : rep.contour_series[s]) out += "," + detail::fmt(v);
        out += "\n";
    }
    return out;
}

/// summary JSON: flat map check id -> {metric, tolerance, pass}.
inline std::string summary_json(const RunReport& rep) {
    nlohmann::ordered_json j;
    j["scenario"] = rep.scenario_name;
    if (!rep.error.empty()) j["error"] = rep.error;
    nlohmann::ordered_json checks = nlohmann::ordered_json::object();
    for (const CheckResult& c : rep.checks) {
        checks[c.id] = {{"metric", c.metric}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

/// Write the requested artifacts under out_dir, named after the scenario.
/// format selects csv or json for the tabular artifacts (JSON wraps the same
/// series); the summary is always JSON.
inline std::vector<std::string> emit_report(const RunReport& rep, const Scenario& sc,
                                            const std::string& format,
                                            const std::string& out_dir) {
    if (format != "csv" && format != "json")
        throw ConfigError("emit_report: format must be csv or json, got \"" + format + "\"");
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    auto write_file = [&](const std::string& name, const std::string& content) {
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("emit_report: cannot write " + path);
        f << content;
        written.push_back(path);
    };

    auto csv_or_json = [&](const std::string& stem, const std::string& csv) {
        if (format == "csv") {
            write_file(stem + ".csv", csv);
        } else {
            // Re-encode the CSV rows as a JSON array of arrays; the header
            // becomes the column list.
            nlohmann::ordered_json j;
            std::istringstream in(csv);
            std::string line;
            std::getline(in, line);
            j["columns"] = nlohmann::ordered_json::array();
            {
                std::istringstream hs(line);
                std::string col;
                while (std::getline(hs, col, ',')) j["columns"].push_back(col);
            }
            j["rows"] = nlohmann::ordered_json::array();
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                std::istringstream ls(line);
                std::string cell;
                while (std::getline(ls, cell, ',')) {
                    try {
                        size_t pos = 0;
                        const double v = std::stod(cell, &pos);
                        if (pos == cell.size()) {
                            row.push_back(v);
                            continue;
                        }
                    } catch (...) {
                    }
                    row.push_back(cell);
                }
                j["rows"].push_back(row);
            }
            write_file(stem + ".json", j.dump(2) + "\n");
        }
    };

    if (sc.out_densities_csv) csv_or_json(sc.name + "_densities", densities_csv(rep));
    if (sc.out_residuals_csv) csv_or_json(sc.name + "_residuals", residuals_csv(rep));
    if (sc.out_bulk_csv) csv_or_json(sc.name + "_bulk", bulk_csv(rep));
    if (sc.out_summary_json) write_file(sc.name + "_summary.json", summary_json(rep));
    return written;
}

}  // namespace wavecons
