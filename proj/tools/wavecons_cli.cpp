// wavecons command-line harness.
//
//   wavecons run   --scenario <path> [--out <dir>] [--format csv|json]
//   wavecons sweep --scenario <path> --axis omega|sigma --values <comma list>
//                  [--out <dir>] [--format csv|json]
//   wavecons check                     (baked-in acceptance suite)
//
// Exit codes: 0 all checks pass, 1 check failure, 2 configuration error,
// 3 numerical failure (NaN / edge guard).

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavecons/acceptance.hpp"
#include "wavecons/report.hpp"
#include "wavecons/runner.hpp"
#include "wavecons/scenario.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw wavecons::ConfigError("--values: cannot parse \"" + tok + "\" as a number");
        }
    }
    return out;
}

void print_report_summary(const wavecons::RunReport& rep) {
    std::cout << "scenario " << rep.scenario_name << ": ";
    if (!rep.error.empty()) {
        std::cout << "numerical failure: " << rep.error << "\n";
        return;
    }
    int pass = 0;
    for (const auto& c : rep.checks) pass += c.pass ? 1 : 0;
    std::cout << pass << "/" << rep.checks.size() << " checks passed";
    std::cerr << "  [" << rep.wall_clock_seconds << " s]";
    std::cout << "\n";
    for (const auto& c : rep.checks)
        if (!c.pass)
            std::cout << "  FAIL " << c.id << ": metric " << c.metric << " > tolerance "
                      << c.tolerance << "\n";
}

int exit_code_for(const std::vector<wavecons::RunReport>& reps) {
    for (const auto& r : reps)
        if (!r.error.empty()) return 3;
    for (const auto& r : reps)
        if (!r.all_checks_pass()) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavecons: free-surface wave solver with a conservation-law audit"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", format = "csv", axis, values_csv;

    CLI::App* cmd_run = app.add_subcommand("run", "run one scenario file");
    cmd_run->add_option("--scenario", scenario_path, "scenario file")->required();
    cmd_run->add_option("--out", out_dir, "output directory");
    cmd_run->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "sweep omega or sigma");
    cmd_sweep->add_option("--scenario", scenario_path, "scenario file")->required();
    cmd_sweep->add_option("--axis", axis, "omega or sigma")
        ->required()
        ->check(CLI::IsMember({"omega", "sigma"}));
    cmd_sweep->add_option("--values", values_csv, "comma-separated values")->required();
    cmd_sweep->add_option("--out", out_dir, "output directory");
    cmd_sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* cmd_check = app.add_subcommand("check", "run the baked-in acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (cmd_run->parsed()) {
            const wavecons::Scenario sc = wavecons::load_scenario(scenario_path);
            const wavecons::RunReport rep = wavecons::run_scenario(sc);
            wavecons::emit_report(rep, sc, format, out_dir);
            print_report_summary(rep);
            return exit_code_for({rep});
        }
        if (cmd_sweep->parsed()) {
            const wavecons::Scenario base = wavecons::load_scenario(scenario_path);
            const std::vector<double> values = parse_values(values_csv);
            const std::vector<wavecons::RunReport> reps = wavecons::sweep(base, axis, values);
            for (size_t i = 0; i < reps.size(); ++i) {
                wavecons::Scenario named = base;
                named.name = reps[i].scenario_name;
                if (reps[i].error.empty()) wavecons::emit_report(reps[i], named, format, out_dir);
                print_report_summary(reps[i]);
            }
            return exit_code_for(reps);
        }
        if (cmd_check->parsed()) {
            return wavecons::acceptance::run_acceptance(std::cout) ? 0 : 1;
        }
    } catch (const wavecons::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
