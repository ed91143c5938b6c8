#pragma once

#include <string>
#include <vector>

#include "pslbm/fields.hpp"
#include "pslbm/lattice.hpp"

namespace pslbm {

// Displacement history at one probe node.
struct ProbeSeries {
    std::string name;
    int node = -1;
    std::vector<double> t;
    std::vector<double> ux;
    std::vector<double> uy;
};

// CSV with exact header "t,ux,uy" and round-trip-precision values.
void write_probe_csv(const std::string& path, const ProbeSeries& series);
ProbeSeries read_probe_csv(const std::string& path);

// One field snapshot over the full structured grid. Outside nodes carry
// mask 0 and zero field values.
struct Snapshot {
    double time = 0.0;
    const Lattice* lattice = nullptr;
    const VectorField* u = nullptr;
    const ScalarField* dilatation = nullptr;
    const ScalarField* rotation = nullptr;
    const ScalarField* consistency = nullptr;
};

void write_snapshot_vtk(const std::string& path, const Snapshot& snap);
void write_snapshot_csv(const std::string& path, const Snapshot& snap);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pslbm
