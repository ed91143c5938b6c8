#pragma once

#include <string>
#include <vector>

#include "pslbm/scenario.hpp"

namespace pslbm {

struct RunOptions {
    enum class Solver { Lbm, Oracle, Both };
    Solver solver = Solver::Lbm;
    int sync_override = -1;  // -1 keeps the scenario's setting
    std::string out_dir = ".";
    std::vector<double> snapshot_times;  // extra snapshots beyond the cadence
    bool serial = false;  // kept for interface stability; execution is serial
};

struct RunResult {
    bool aborted = false;
    std::string manifest_path;
    std::vector<std::string> files;
};

// Execute the scenario with the selected solver(s), write probe series,
// snapshots, and the run manifest into out_dir. Returns the abort status;
// an aborted run still produces its manifest.
RunResult run_scenario(const Scenario& scenario, const RunOptions& opts);

// Human-readable summary of the scenario and everything derived from it.
std::string describe_scenario(const Scenario& scenario);

}  // namespace pslbm
