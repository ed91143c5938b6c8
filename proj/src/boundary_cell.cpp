#include "pslbm/boundary_cell.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace pslbm {

namespace {

// Convex polygon with a tag per edge recording where the edge came from.
// Edge i runs from vertex i to vertex i+1 (cyclic).
struct TaggedPolygon {
    struct Tag {
        bool is_square_side = false;
        int value = 0;  // link alpha for square sides, feature id otherwise
    };
    std::vector<Vec2> v;
    std::vector<Tag> tag;
};

// Sutherland-Hodgman clip against the half-plane dot(p - p0, n) >= 0.
// Edges created along the clip line receive new_tag.
TaggedPolygon clip(const TaggedPolygon& poly, const Vec2& p0, const Vec2& n,
                   const TaggedPolygon::Tag& new_tag) {
    TaggedPolygon out;
    const int k = static_cast<int>(poly.v.size());
    for (int i = 0; i < k; ++i) {
        const Vec2& A = poly.v[i];
        const Vec2& B = poly.v[(i + 1) % k];
        const double da = dot(A - p0, n);
        const double db = dot(B - p0, n);
        const bool ain = da >= 0.0;
        const bool bin = db >= 0.0;
        if (ain) {
            out.v.push_back(A);
            out.tag.push_back(poly.tag[i]);
            if (!bin) {
                out.v.push_back(A + (B - A) * (da / (da - db)));
                out.tag.push_back(new_tag);
            }
        } else if (bin) {
            out.v.push_back(A + (B - A) * (da / (da - db)));
            out.tag.push_back(poly.tag[i]);
        }
    }
    return out;
}

double polygon_area(const TaggedPolygon& poly) {
    double s = 0.0;
    const int k = static_cast<int>(poly.v.size());
    for (int i = 0; i < k; ++i) {
        const Vec2& A = poly.v[i];
        const Vec2& B = poly.v[(i + 1) % k];
        s += A.x * B.y - B.x * A.y;
    }
    return 0.5 * s;
}

bool point_in_polygon(const TaggedPolygon& poly, const Vec2& p, double tol) {
    const int k = static_cast<int>(poly.v.size());
    for (int i = 0; i < k; ++i) {
        const Vec2 d = poly.v[(i + 1) % k] - poly.v[i];
        // CCW polygon: inside points sit left of every edge.
        if ((d.x * (p.y - poly.v[i].y) - d.y * (p.x - poly.v[i].x)) < -tol) return false;
    }
    return true;
}

// Intersections of the circle with the polygon's edges, as angles around the
// hole center.
std::vector<double> circle_crossing_angles(const TaggedPolygon& poly, const CircularHole& hole,
                                           double tol) {
    std::vector<double> angles;
    const int k = static_cast<int>(poly.v.size());
    const double r = hole.radius();
    for (int i = 0; i < k; ++i) {
        const Vec2 A = poly.v[i];
        const Vec2 d = poly.v[(i + 1) % k] - poly.v[i];
        const Vec2 m = A - hole.center;
        const double aa = dot(d, d);
        if (aa < tol * tol) continue;
        const double bb = 2.0 * dot(m, d);
        const double cc = dot(m, m) - r * r;
        const double disc = bb * bb - 4.0 * aa * cc;
        if (disc <= 0.0) continue;
        const double sq = std::sqrt(disc);
        for (const double s : {(-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)}) {
            if (s < -tol || s > 1.0 + tol) continue;
            const Vec2 p = A + d * std::clamp(s, 0.0, 1.0);
            angles.push_back(std::atan2(p.y - hole.center.y, p.x - hole.center.x));
        }
    }
    std::sort(angles.begin(), angles.end());
    // Merge duplicates from crossings at shared vertices.
    std::vector<double> unique;
    for (const double a : angles) {
        if (unique.empty() || std::abs(a - unique.back()) > 1e-9) unique.push_back(a);
    }
    if (unique.size() > 1 &&
        std::abs((unique.front() + 2.0 * M_PI) - unique.back()) < 1e-9) {
        unique.pop_back();
    }
    return unique;
}

void clip_by_hole(TaggedPolygon& poly, const CircularHole& hole, int hole_id, double tol) {
    const auto angles = circle_crossing_angles(poly, hole, tol);
    if (angles.size() < 2) return;  // circle does not pass through this cell
    if (angles.size() > 2) {
        std::cerr << "boundary_cell: hole " << hole_id << " crosses one cell "
                  << angles.size() << " times; clipping each arc by its chord\n";
    }
    const double r = hole.radius();
    const int k = static_cast<int>(angles.size());
    const TaggedPolygon::Tag chord_tag{false, feature::hole(hole_id)};
    for (int i = 0; i < k; ++i) {
        const double a0 = angles[i];
        double a1 = angles[(i + 1) % k];
        if (a1 <= a0) a1 += 2.0 * M_PI;
        const double amid = 0.5 * (a0 + a1);
        const Vec2 arc_mid = hole.center + Vec2{r * std::cos(amid), r * std::sin(amid)};
        if (!point_in_polygon(poly, arc_mid, tol)) continue;
        const Vec2 p0 = hole.center + Vec2{r * std::cos(a0), r * std::sin(a0)};
        const Vec2 p1 = hole.center + Vec2{r * std::cos(a1), r * std::sin(a1)};
        // Keep the side of the chord away from the hole center.
        const Vec2 mid = (p0 + p1) * 0.5;
        Vec2 inward = mid - hole.center;
        const double len = norm(inward);
        if (len < tol) {
            // Chord through the center: orient away from the arc midpoint.
            inward = mid - arc_mid;
        }
        poly = clip(poly, mid, inward / norm(inward), chord_tag);
        if (poly.v.size() < 3) return;
    }
}

}  // namespace

Vec2 BoundaryCell::closure_defect() const {
    Vec2 s;
    for (const auto& seg : internal) s += seg.normal * seg.length;
    for (const auto& seg : external) s += seg.normal * seg.length;
    return s;
}

BoundaryCell compute_boundary_cell(const Lattice& lat, const Geometry& geom, int node) {
    if (!lat.material(node)) {
        throw std::invalid_argument("boundary_cell: node is outside the material region");
    }
    const double h = 0.5 * lat.dh();
    const double tol = lat.geom_tol();
    const Vec2 p = lat.coord(node);

    TaggedPolygon poly;
    poly.v = {{p.x - h, p.y - h}, {p.x + h, p.y - h}, {p.x + h, p.y + h}, {p.x - h, p.y + h}};
    poly.tag = {{true, 4}, {true, 1}, {true, 2}, {true, 3}};

    poly = clip(poly, {0.0, 0.0}, {1.0, 0.0}, {false, feature::left});
    poly = clip(poly, {geom.width, 0.0}, {-1.0, 0.0}, {false, feature::right});
    poly = clip(poly, {0.0, 0.0}, {0.0, 1.0}, {false, feature::bottom});
    poly = clip(poly, {0.0, geom.height}, {0.0, -1.0}, {false, feature::top});
    for (std::size_t i = 0; i < geom.holes.size() && poly.v.size() >= 3; ++i) {
        clip_by_hole(poly, geom.holes[i], static_cast<int>(i), tol);
    }

    BoundaryCell cell;
    cell.node = node;
    cell.volume = poly.v.size() >= 3 ? polygon_area(poly) : 0.0;
    cell.degenerate = cell.volume < kDegenerateVolumeFactor * lat.dh() * lat.dh();

    const int k = static_cast<int>(poly.v.size());
    for (int i = 0; i < k; ++i) {
        const Vec2 A = poly.v[i];
        const Vec2 B = poly.v[(i + 1) % k];
        const Vec2 d = B - A;
        const double len = norm(d);
        if (len <= tol) continue;
        const Vec2 n{d.y / len, -d.x / len};  // outward for a CCW polygon
        const auto& tag = poly.tag[i];
        if (tag.is_square_side) {
            const int nb = lat.neighbor(node, tag.value);
            if (nb >= 0) {
                // Collinear pieces toward the same neighbor merge.
                auto it = std::find_if(cell.internal.begin(), cell.internal.end(),
                                       [&](const auto& s) { return s.alpha == tag.value; });
                if (it != cell.internal.end()) {
                    it->length += len;
                } else {
                    cell.internal.push_back({nb, tag.value, len, n});
                }
                continue;
            }
            // The shared face survives but the neighbor node is not material
            // (a hole passes just beyond it). No neighbor stress exists, so
            // the face is treated as part of the hole surface.
            int nearest_hole = 0;
            double best = std::numeric_limits<double>::infinity();
            const Vec2 mid = (A + B) * 0.5;
            for (std::size_t hidx = 0; hidx < geom.holes.size(); ++hidx) {
                const double dist =
                    std::abs(norm(mid - geom.holes[hidx].center) - geom.holes[hidx].radius());
                if (dist < best) {
                    best = dist;
                    nearest_hole = static_cast<int>(hidx);
                }
            }
            cell.external.push_back({len, n, mid, feature::hole(nearest_hole)});
        } else {
            cell.external.push_back({len, n, (A + B) * 0.5, tag.value});
        }
    }
    return cell;
}

BoundaryCells build_boundary_cells(Lattice& lat, const Geometry& geom) {
    // First pass: find degenerate slivers and demote them.
    std::vector<int> demoted;
    for (const int node : lat.nodes_of(NodeClass::Boundary)) {
        if (compute_boundary_cell(lat, geom, node).degenerate) demoted.push_back(node);
    }
    std::vector<BoundaryCell> orphan_cells;
    for (const int node : demoted) {
        orphan_cells.push_back(compute_boundary_cell(lat, geom, node));
        lat.reclassify_outside(node);
        std::cerr << "boundary_cell: node " << node << " demoted (sliver volume "
                  << orphan_cells.back().volume << ")\n";
    }

    BoundaryCells out;
    out.cell_index.assign(lat.node_count(), -1);
    for (const int node : lat.nodes_of(NodeClass::Boundary)) {
        out.cell_index[node] = static_cast<int>(out.cells.size());
        out.cells.push_back(compute_boundary_cell(lat, geom, node));
    }

    // Hand each orphaned surface to the nearest surviving Boundary node so
    // applied tractions are not silently dropped.
    for (const auto& orphan : orphan_cells) {
        if (orphan.external.empty()) continue;
        const Vec2 p = lat.coord(orphan.node);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (const int node : lat.nodes_of(NodeClass::Boundary)) {
            const double d = norm(lat.coord(node) - p);
            if (d < best_d) {
                best_d = d;
                best = node;
            }
        }
        if (best < 0) continue;
        auto& host = out.cells[out.cell_index[best]];
        for (const auto& seg : orphan.external) host.external.push_back(seg);
    }
    return out;
}

}  // namespace pslbm
