#include "pslbm/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pslbm {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("output: cannot open '" + path + "' for writing");
    return out;
}

// Shortest representation that round-trips a double exactly.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_probe_csv(const std::string& path, const ProbeSeries& series) {
    std::ofstream out = open_out(path);
    out << "t,ux,uy\n";
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        out << fmt(series.t[i]) << ',' << fmt(series.ux[i]) << ',' << fmt(series.uy[i]) << '\n';
    }
}

ProbeSeries read_probe_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("output: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != "t,ux,uy") {
        throw std::runtime_error("output: '" + path + "' is not a probe series file");
    }
    ProbeSeries s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[3];
        for (double& v : vals) {
            if (!std::getline(row, cell, ',')) {
                throw std::runtime_error("output: malformed row in '" + path + "'");
            }
            v = std::stod(cell);
        }
        s.t.push_back(vals[0]);
        s.ux.push_back(vals[1]);
        s.uy.push_back(vals[2]);
    }
    return s;
}

void write_snapshot_vtk(const std::string& path, const Snapshot& snap) {
    const Lattice& lat = *snap.lattice;
    std::ofstream out = open_out(path);
    out << "# vtk DataFile Version 3.0\n";
    out << "fields at t=" << fmt(snap.time) << "\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << lat.nx() << ' ' << lat.ny() << " 1\n";
    out << "ORIGIN 0 0 0\n";
    out << "SPACING " << fmt(lat.dh()) << ' ' << fmt(lat.dh()) << " 1\n";
    out << "POINT_DATA " << lat.node_count() << "\n";

    out << "SCALARS mask int 1\nLOOKUP_TABLE default\n";
    for (int node = 0; node < lat.node_count(); ++node) {
        out << (lat.material(node) ? 1 : 0) << '\n';
    }
    out << "VECTORS displacement double\n";
    for (int node = 0; node < lat.node_count(); ++node) {
        out << fmt(snap.u->x[node]) << ' ' << fmt(snap.u->y[node]) << " 0\n";
    }
    const auto scalar = [&](const char* name, const ScalarField* f) {
        if (f == nullptr) return;
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (int node = 0; node < lat.node_count(); ++node) out << fmt((*f)[node]) << '\n';
    };
    scalar("dilatation", snap.dilatation);
    scalar("rotation", snap.rotation);
    scalar("consistency_error", snap.consistency);
}

void write_snapshot_csv(const std::string& path, const Snapshot& snap) {
    const Lattice& lat = *snap.lattice;
    std::ofstream out = open_out(path);
    out << "x,y,mask,ux,uy,dilatation,rotation,consistency_error\n";
    for (int node = 0; node < lat.node_count(); ++node) {
        const Vec2 p = lat.coord(node);
        out << fmt(p.x) << ',' << fmt(p.y) << ',' << (lat.material(node) ? 1 : 0) << ','
            << fmt(snap.u->x[node]) << ',' << fmt(snap.u->y[node]) << ','
            << fmt(snap.dilatation ? (*snap.dilatation)[node] : 0.0) << ','
            << fmt(snap.rotation ? (*snap.rotation)[node] : 0.0) << ','
            << fmt(snap.consistency ? (*snap.consistency)[node] : 0.0) << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out << content;
}

}  // namespace pslbm
