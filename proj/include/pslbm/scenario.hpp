#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pslbm/boundary.hpp"
#include "pslbm/boundary_cell.hpp"
#include "pslbm/geometry.hpp"
#include "pslbm/lattice.hpp"
#include "pslbm/material.hpp"
#include "pslbm/wave_lbm.hpp"

namespace pslbm {

// Raised for malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Declarative boundary rule as it appears in a config document.
struct BcSpec {
    enum class Kind { Free, Traction, Fixed };
    Kind kind = Kind::Free;
    Vec2 direction;  // Traction
    LoadCurve load;  // Traction
    Vec2 value;      // Fixed

    FeatureRule to_rule() const;
};

struct Probe {
    std::string name;
    Vec2 position;
};

struct OutputSpec {
    int probe_stride = 1;        // record probes every N steps
    double snapshot_every = 0.0; // field snapshot period in problem time, 0 = off
};

// A full simulation description. Configs are authored in normalized units:
// lengths in the plate size L, times in L/cs, stresses in mu.
struct Scenario {
    std::string name;
    Geometry geometry;
    double cs = 1.0;
    double cs_over_cd = 0.0;
    double mu = 1.0;
    int nodes_x = 0;
    int nodes_y = 0;
    double a0_dil = 0.0;
    int sync_every = 0;
    double t_end = 0.0;
    BcSpec left, right, bottom, top, holes_bc;
    std::vector<Probe> probes;
    OutputSpec output;

    Material material() const { return Material::from_wave_speeds(cs, cs_over_cd, mu); }
    double dh() const { return geometry.width / (nodes_x - 1); }

    // Throws ConfigError when any field is out of range or inconsistent.
    void validate() const;
};

// Parse / serialize the JSON config document. Unknown keys are errors.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string scenario_to_json(const Scenario& s, int indent = 2);

// Shipped presets: "tension", "shear", "hole".
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
Scenario preset(const std::string& name);

// Preset name or config file path.
Scenario resolve_scenario(const std::string& arg);

// Everything derived from a scenario that the solvers consume.
struct SimulationSetup {
    Geometry geometry;
    Lattice lattice;
    BoundaryCells cells;
    BoundaryConditions bcs;
    Material material;
    LbmParams dil;
    LbmParams rot;
    std::vector<int> probe_nodes;  // snapped to the nearest material node
};

SimulationSetup build_setup(const Scenario& s);

}  // namespace pslbm
