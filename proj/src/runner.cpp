#include "pslbm/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "pslbm/fd_ops.hpp"
#include "pslbm/fdm_solver.hpp"
#include "pslbm/output.hpp"
#include "pslbm/solver.hpp"

namespace pslbm {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string time_tag(double t) {
    std::ostringstream os;
    os << t;
    std::string s = os.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

std::vector<double> snapshot_schedule(const Scenario& sc, const RunOptions& opts) {
    std::vector<double> times = opts.snapshot_times;
    if (sc.output.snapshot_every > 0.0) {
        for (double t = sc.output.snapshot_every; t <= sc.t_end * (1.0 + 1e-12);
             t += sc.output.snapshot_every) {
            times.push_back(t);
        }
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

json derived_info(const Scenario& sc, const SimulationSetup& setup) {
    const ClassCounts counts = setup.lattice.counts();
    json probes = json::array();
    for (std::size_t i = 0; i < sc.probes.size(); ++i) {
        const int node = setup.probe_nodes[i];
        const Vec2 p = setup.lattice.coord(node);
        probes.push_back({{"name", sc.probes[i].name},
                          {"requested", {sc.probes[i].position.x, sc.probes[i].position.y}},
                          {"node", node},
                          {"snapped", {p.x, p.y}}});
    }
    return {
        {"dh", setup.lattice.dh()},
        {"dt", setup.dil.dt},
        {"node_counts",
         {{"outside", counts.outside},
          {"boundary", counts.boundary},
          {"second_row", counts.second_row},
          {"interior", counts.interior}}},
        {"material",
         {{"lambda", setup.material.lambda},
          {"mu", setup.material.mu},
          {"rho", setup.material.rho},
          {"cd", setup.material.cd()},
          {"cs", setup.material.cs()}}},
        {"lbm",
         {{"a0_dil", setup.dil.a0},
          {"a_dil", setup.dil.a},
          {"a0_rot", setup.rot.a0},
          {"a_rot", setup.rot.a},
          {"cfl", setup.material.cd() * setup.dil.dt / setup.lattice.dh()},
          {"wave_speed_dil", setup.dil.wave_speed()},
          {"wave_speed_rot", setup.rot.wave_speed()}}},
        {"probes", probes},
    };
}

struct SolverOutputs {
    json record;
    std::vector<std::string> files;
    bool aborted = false;
};

// Shared run loop over either solver type.
template <typename Solver, typename SnapshotFn>
SolverOutputs run_loop(const Scenario& sc, const SimulationSetup& setup, Solver& solver,
                       const std::string& label, const fs::path& out_dir,
                       const std::vector<double>& snap_times, const SnapshotFn& make_snapshot) {
    SolverOutputs out;
    const double dt = solver.dt();
    const long n_steps = static_cast<long>(std::ceil(sc.t_end / dt - 1e-12));
    std::vector<ProbeSeries> series(sc.probes.size());
    for (std::size_t i = 0; i < sc.probes.size(); ++i) {
        series[i].name = sc.probes[i].name;
        series[i].node = setup.probe_nodes[i];
    }
    const auto record_probes = [&]() {
        for (auto& s : series) {
            s.t.push_back(solver.time());
            s.ux.push_back(solver.displacement().x[s.node]);
            s.uy.push_back(solver.displacement().y[s.node]);
        }
    };
    record_probes();

    std::size_t next_snap = 0;
    const auto t_start = std::chrono::steady_clock::now();
    bool aborted = false;
    for (long step = 1; step <= n_steps; ++step) {
        if (solver.step() != Solver::StepResult::Ok) {
            aborted = true;
            break;
        }
        if (step % sc.output.probe_stride == 0 || step == n_steps) record_probes();
        while (next_snap < snap_times.size() &&
               solver.time() + 0.5 * dt >= snap_times[next_snap]) {
            const std::string base =
                sc.name + "_" + label + "_t" + time_tag(snap_times[next_snap]);
            const auto snap = make_snapshot(solver);
            write_snapshot_vtk((out_dir / (base + ".vtk")).string(), snap);
            write_snapshot_csv((out_dir / (base + ".csv")).string(), snap);
            out.files.push_back(base + ".vtk");
            out.files.push_back(base + ".csv");
            ++next_snap;
        }
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    json probe_files = json::array();
    for (const auto& s : series) {
        const std::string fname = sc.name + "_" + label + "_probe_" + s.name + ".csv";
        write_probe_csv((out_dir / fname).string(), s);
        out.files.push_back(fname);
        probe_files.push_back(fname);
    }

    out.aborted = aborted;
    out.record = {{"solver", label},
                  {"status", aborted ? "aborted" : "completed"},
                  {"steps", solver.step_count()},
                  {"dt", dt},
                  {"t_reached", solver.time()},
                  {"wall_seconds", wall},
                  {"probe_files", probe_files}};
    if (aborted && solver.abort_info()) {
        const auto& info = *solver.abort_info();
        const Vec2 p = setup.lattice.coord(info.node);
        out.record["abort"] = {{"step", info.step},
                               {"time", info.time},
                               {"node", info.node},
                               {"position", {p.x, p.y}}};
    }
    return out;
}

}  // namespace

RunResult run_scenario(const Scenario& scenario, const RunOptions& opts) {
    Scenario sc = scenario;
    if (opts.sync_override >= 0) sc.sync_every = opts.sync_override;
    sc.validate();

    const fs::path out_dir(opts.out_dir);
    fs::create_directories(out_dir);

    SimulationSetup setup = build_setup(sc);
    const std::vector<double> snap_times = snapshot_schedule(sc, opts);

    RunResult result;
    json runs = json::array();

    const bool want_lbm =
        opts.solver == RunOptions::Solver::Lbm || opts.solver == RunOptions::Solver::Both;
    const bool want_oracle =
        opts.solver == RunOptions::Solver::Oracle || opts.solver == RunOptions::Solver::Both;

    if (want_lbm) {
        ElastodynSolver::Config cfg{setup.dil, setup.rot, setup.material, sc.sync_every};
        ElastodynSolver solver(setup.lattice, setup.cells, setup.bcs, cfg);
        ScalarField err(setup.lattice);
        const auto snap_fn = [&](ElastodynSolver& s) {
            err = s.consistency_error();
            return Snapshot{s.time(), &setup.lattice, &s.displacement(), &s.dilatation(),
                            &s.rotation(), &err};
        };
        SolverOutputs so = run_loop(sc, setup, solver, "lbm", out_dir, snap_times, snap_fn);
        result.aborted |= so.aborted;
        runs.push_back(so.record);
        for (auto& f : so.files) result.files.push_back(f);
    }
    if (want_oracle) {
        NavierFdmSolver::Config cfg{setup.material, 0.0};
        NavierFdmSolver solver(setup.lattice, setup.cells, setup.bcs, cfg);
        ScalarField dil(setup.lattice), rot(setup.lattice);
        const auto snap_fn = [&](NavierFdmSolver& s) {
            dil = div2d(s.displacement(), setup.lattice);
            rot = curl2d(s.displacement(), setup.lattice);
            return Snapshot{s.time(), &setup.lattice, &s.displacement(), &dil, &rot, nullptr};
        };
        SolverOutputs so = run_loop(sc, setup, solver, "oracle", out_dir, snap_times, snap_fn);
        result.aborted |= so.aborted;
        runs.push_back(so.record);
        for (auto& f : so.files) result.files.push_back(f);
    }

    json manifest{
        {"scenario", json::parse(scenario_to_json(sc))},
        {"derived", derived_info(sc, setup)},
        {"options",
         {{"solver", want_lbm && want_oracle ? "both" : (want_lbm ? "lbm" : "oracle")},
          {"sync_every", sc.sync_every},
          {"serial", true}}},
        {"runs", runs},
    };
    const std::string manifest_name = sc.name + "_manifest.json";
    write_text_file((out_dir / manifest_name).string(), manifest.dump(2) + "\n");
    result.manifest_path = (out_dir / manifest_name).string();
    result.files.push_back(manifest_name);
    return result;
}

std::string describe_scenario(const Scenario& scenario) {
    scenario.validate();
    SimulationSetup setup = build_setup(scenario);
    const ClassCounts counts = setup.lattice.counts();
    std::ostringstream os;
    os << "scenario: " << scenario.name << "\n";
    os << "geometry: " << scenario.geometry.width << " x " << scenario.geometry.height << ", "
       << scenario.geometry.holes.size() << " hole(s)\n";
    for (const auto& h : scenario.geometry.holes) {
        os << "  hole center (" << h.center.x << ", " << h.center.y << ") diameter "
           << h.diameter << "\n";
    }
    os << "lattice: " << setup.lattice.nx() << " x " << setup.lattice.ny()
       << " nodes, dh = " << setup.lattice.dh() << "\n";
    os << "node classes: boundary " << counts.boundary << ", second row " << counts.second_row
       << ", interior " << counts.interior << ", outside " << counts.outside << "\n";
    os << "material: lambda = " << setup.material.lambda << ", mu = " << setup.material.mu
       << ", rho = " << setup.material.rho << ", cd = " << setup.material.cd()
       << ", cs = " << setup.material.cs() << "\n";
    os << "lbm: a0_dil = " << setup.dil.a0 << ", a_dil = " << setup.dil.a
       << ", a0_rot = " << setup.rot.a0 << ", a_rot = " << setup.rot.a << "\n";
    os << "dt = " << setup.dil.dt
       << ", cfl = " << setup.material.cd() * setup.dil.dt / setup.lattice.dh()
       << ", steps to t_end = "
       << static_cast<long>(std::ceil(scenario.t_end / setup.dil.dt - 1e-12)) << "\n";
    os << "sync_every = " << scenario.sync_every << ", t_end = " << scenario.t_end << "\n";
    for (std::size_t i = 0; i < scenario.probes.size(); ++i) {
        const Vec2 p = setup.lattice.coord(setup.probe_nodes[i]);
        os << "probe " << scenario.probes[i].name << ": requested ("
           << scenario.probes[i].position.x << ", " << scenario.probes[i].position.y
           << ") -> node " << setup.probe_nodes[i] << " at (" << p.x << ", " << p.y << ")\n";
    }
    return os.str();
}

}  // namespace pslbm
