#pragma once

#include <vector>

#include "pslbm/geometry.hpp"
#include "pslbm/lattice.hpp"

namespace pslbm {

// Node-indexed storage. Entries at Outside nodes are kept at zero and are
// never read by the discrete operators.

struct ScalarField {
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Lattice& lat) : v(lat.node_count(), 0.0) {}
    double& operator[](int node) { return v[node]; }
    double operator[](int node) const { return v[node]; }
    int size() const { return static_cast<int>(v.size()); }
};

struct VectorField {
    std::vector<double> x, y;

    VectorField() = default;
    explicit VectorField(const Lattice& lat)
        : x(lat.node_count(), 0.0), y(lat.node_count(), 0.0) {}
    Vec2 at(int node) const { return {x[node], y[node]}; }
    void set(int node, const Vec2& value) {
        x[node] = value.x;
        y[node] = value.y;
    }
    int size() const { return static_cast<int>(x.size()); }
};

// Symmetric 2x2 tensor per node (plane-strain in-plane components).
struct SymTensor2 {
    double xx = 0.0;
    double yy = 0.0;
    double xy = 0.0;

    Vec2 apply(const Vec2& n) const { return {xx * n.x + xy * n.y, xy * n.x + yy * n.y}; }
};

struct TensorField {
    std::vector<double> xx, yy, xy;

    TensorField() = default;
    explicit TensorField(const Lattice& lat)
        : xx(lat.node_count(), 0.0), yy(lat.node_count(), 0.0), xy(lat.node_count(), 0.0) {}
    SymTensor2 at(int node) const { return {xx[node], yy[node], xy[node]}; }
    void set(int node, const SymTensor2& s) {
        xx[node] = s.xx;
        yy[node] = s.yy;
        xy[node] = s.xy;
    }
    int size() const { return static_cast<int>(xx.size()); }
};

}  // namespace pslbm
