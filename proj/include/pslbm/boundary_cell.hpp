#pragma once

#include <vector>

#include "pslbm/geometry.hpp"
#include "pslbm/lattice.hpp"

namespace pslbm {

// Identifiers for the geometry features an external segment can belong to.
namespace feature {
inline constexpr int left = 0;
inline constexpr int right = 1;
inline constexpr int bottom = 2;
inline constexpr int top = 3;
inline constexpr int hole_base = 4;
inline int hole(int i) { return hole_base + i; }
inline bool is_hole(int f) { return f >= hole_base; }
inline int hole_index(int f) { return f - hole_base; }
}  // namespace feature

// Control volume of a Boundary node: the centered dh-square clipped to the
// material region, with curved hole boundaries replaced by the chord between
// the points where the circle crosses the cell edges.
struct BoundaryCell {
    struct InternalSegment {
        int neighbor = -1;  // node index across the segment
        int alpha = 0;      // link direction 1..4 toward that neighbor
        double length = 0.0;
        Vec2 normal;  // outward unit normal (toward the neighbor)
    };
    struct ExternalSegment {
        double length = 0.0;
        Vec2 normal;    // outward unit normal (out of the material)
        Vec2 midpoint;  // traction evaluation point
        int feature = -1;
    };

    int node = -1;
    double volume = 0.0;
    bool degenerate = false;  // volume below 1e-3 * dh^2
    std::vector<InternalSegment> internal;
    std::vector<ExternalSegment> external;

    // Sum of length * outward normal over all segments; zero for a closed
    // cell boundary.
    Vec2 closure_defect() const;
};

// Volume threshold (relative to dh^2) below which a cell is degenerate.
inline constexpr double kDegenerateVolumeFactor = 1e-3;

// Clip the cell of a single node. Works for any material node; interior
// nodes yield the full square with no external segments.
BoundaryCell compute_boundary_cell(const Lattice& lat, const Geometry& geom, int node);

struct BoundaryCells {
    std::vector<BoundaryCell> cells;
    std::vector<int> cell_index;  // per node, -1 when the node has no cell

    const BoundaryCell* cell_for(int node) const {
        const int k = cell_index[node];
        return k >= 0 ? &cells[k] : nullptr;
    }
};

// Cells for every Boundary node. Degenerate sliver cells demote their node
// to Outside; their external surface is handed to the nearest remaining
// Boundary neighbor so no loaded surface is lost.
BoundaryCells build_boundary_cells(Lattice& lat, const Geometry& geom);

}  // namespace pslbm
