#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pslbm/geometry.hpp"

namespace pslbm {

// Geometric comparisons are resolved at this fraction of the spacing.
inline constexpr double kGeomTolFactor = 1e-10;

enum class NodeClass : std::uint8_t {
    Outside = 0,   // not part of the material region
    Boundary,      // centered dh-square crosses the material boundary
    SecondRow,     // material node with a Boundary D2Q5 neighbor
    Interior,
};

const char* to_string(NodeClass c);

struct ClassCounts {
    int outside = 0;
    int boundary = 0;
    int second_row = 0;
    int interior = 0;
};

// Regular square lattice over a Geometry. Node (i,j) sits at (i*dh, j*dh).
// D2Q5 link directions are indexed 1..4 = +x, +y, -x, -y (0 is rest).
class Lattice {
  public:
    static Lattice build(const Geometry& geom, double dh);

    // Rectangular test lattice with every node Interior and wrap-around
    // neighbor links on the requested axes. Non-wrapped axes mark their
    // outermost rows Boundary and the next rows SecondRow, but no geometry
    // is attached; callers provide their own boundary cells.
    static Lattice periodic(int nx, int ny, double dh, bool wrap_x, bool wrap_y);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int node_count() const { return nx_ * ny_; }
    double dh() const { return dh_; }
    double geom_tol() const { return kGeomTolFactor * dh_; }

    int index(int i, int j) const { return j * nx_ + i; }
    int col(int node) const { return node % nx_; }
    int row(int node) const { return node / nx_; }
    Vec2 coord(int node) const { return {col(node) * dh_, row(node) * dh_}; }

    NodeClass node_class(int node) const { return classes_[node]; }
    bool material(int node) const { return classes_[node] != NodeClass::Outside; }

    // Neighbor along link alpha in 1..4, or -1 when the link leaves the
    // material region (or the array).
    int neighbor(int node, int alpha) const { return neighbors_[node * 4 + (alpha - 1)]; }

    static int opposite(int alpha) { return 1 + ((alpha - 1) + 2) % 4; }

    // Unit direction of link alpha in lattice steps.
    static std::array<int, 2> link_step(int alpha);

    ClassCounts counts() const;
    const std::vector<int>& nodes_of(NodeClass c) const;

    int nearest_material_node(const Vec2& p) const;

    // Construction-phase only: demote a degenerate Boundary node and repair
    // neighbor links and SecondRow flags. Results are immutable afterwards.
    void reclassify_outside(int node);

    // Throws std::runtime_error when a structural invariant is violated.
    void validate() const;

  private:
    Lattice() = default;
    void rebuild_neighbor_table(bool wrap_x, bool wrap_y);
    void refresh_second_row();
    void rebuild_class_lists();

    int nx_ = 0;
    int ny_ = 0;
    double dh_ = 0.0;
    std::vector<NodeClass> classes_;
    std::vector<std::int32_t> neighbors_;
    std::array<std::vector<int>, 4> by_class_;
};

}  // namespace pslbm
