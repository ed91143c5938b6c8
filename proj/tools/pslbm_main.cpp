// Command line front end: inspect configs and run simulations.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical abort.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pslbm/runner.hpp"
#include "pslbm/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"plane-strain elastodynamics on a D2Q5 lattice"};
    app.require_subcommand(1);

    std::string describe_config;
    CLI::App* describe =
        app.add_subcommand("describe", "print the scenario and derived parameters");
    describe->add_option("config", describe_config, "preset name (tension, shear, hole) or path")
        ->required();

    std::string run_config;
    std::string solver = "lbm";
    int sync_override = -1;
    pslbm::RunOptions opts;
    CLI::App* run = app.add_subcommand("run", "run a scenario and write outputs");
    run->add_option("config", run_config, "preset name (tension, shear, hole) or path")
        ->required();
    run->add_option("--solver", solver, "lbm, oracle, or both")
        ->check(CLI::IsMember({"lbm", "oracle", "both"}));
    run->add_option("--sync", sync_override, "override the resynchronization interval");
    run->add_option("--out", opts.out_dir, "output directory (default: current)");
    run->add_option("--snapshot-at", opts.snapshot_times, "write a field snapshot at time T");
    run->add_flag("--serial", opts.serial, "force serial execution (always on)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (describe->parsed()) {
            std::cout << pslbm::describe_scenario(pslbm::resolve_scenario(describe_config));
            return 0;
        }
        const pslbm::Scenario scenario = pslbm::resolve_scenario(run_config);
        opts.sync_override = sync_override;
        if (solver == "oracle") {
            opts.solver = pslbm::RunOptions::Solver::Oracle;
        } else if (solver == "both") {
            opts.solver = pslbm::RunOptions::Solver::Both;
        }
        const pslbm::RunResult result = pslbm::run_scenario(scenario, opts);
        std::cout << "manifest: " << result.manifest_path << "\n";
        if (result.aborted) {
            std::cerr << "run aborted on non-finite values; see manifest\n";
            return 3;
        }
        return 0;
    } catch (const pslbm::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
