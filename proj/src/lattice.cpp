#include "pslbm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pslbm {

namespace {

// Distance from p to the closed axis-aligned square centered at c with half
// side h, and to its farthest corner.
void square_distance_range(const Vec2& p, const Vec2& c, double h, double& dmin, double& dmax) {
    const double ax = std::abs(p.x - c.x);
    const double ay = std::abs(p.y - c.y);
    const double ox = std::max(ax - h, 0.0);
    const double oy = std::max(ay - h, 0.0);
    dmin = std::hypot(ox, oy);
    dmax = std::hypot(ax + h, ay + h);
}

int conforming_node_count(double extent, double dh, const char* axis) {
    const double cells = extent / dh;
    const long n = std::lround(cells);
    if (n < 1 || std::abs(extent - static_cast<double>(n) * dh) > kGeomTolFactor * dh) {
        throw std::invalid_argument(std::string("lattice: ") + axis +
                                    " extent is not an integer multiple of the spacing");
    }
    return static_cast<int>(n) + 1;
}

}  // namespace

const char* to_string(NodeClass c) {
    switch (c) {
        case NodeClass::Outside: return "outside";
        case NodeClass::Boundary: return "boundary";
        case NodeClass::SecondRow: return "second_row";
        case NodeClass::Interior: return "interior";
    }
    return "?";
}

std::array<int, 2> Lattice::link_step(int alpha) {
    switch (alpha) {
        case 1: return {1, 0};
        case 2: return {0, 1};
        case 3: return {-1, 0};
        case 4: return {0, -1};
        default: return {0, 0};
    }
}

Lattice Lattice::build(const Geometry& geom, double dh) {
    geom.validate();
    if (!(dh > 0.0)) throw std::invalid_argument("lattice: spacing must be positive");

    Lattice lat;
    lat.dh_ = dh;
    lat.nx_ = conforming_node_count(geom.width, dh, "x");
    lat.ny_ = conforming_node_count(geom.height, dh, "y");
    const int n = lat.nx_ * lat.ny_;
    lat.classes_.assign(n, NodeClass::Outside);

    const double tol = lat.geom_tol();
    std::vector<int> hole_hits(geom.holes.size(), 0);

    for (int j = 0; j < lat.ny_; ++j) {
        for (int i = 0; i < lat.nx_; ++i) {
            const int node = lat.index(i, j);
            const Vec2 p = lat.coord(node);

            bool outside = false;
            bool on_hole = false;
            bool square_cut = false;
            for (std::size_t h = 0; h < geom.holes.size(); ++h) {
                const CircularHole& hole = geom.holes[h];
                const double clearance = norm(p - hole.center) - hole.radius();
                if (clearance < -tol) {
                    outside = true;
                    ++hole_hits[h];
                    break;
                }
                if (clearance <= tol) on_hole = true;
                double dmin, dmax;
                square_distance_range(p, hole.center, 0.5 * dh, dmin, dmax);
                if (dmin < hole.radius() - tol && dmax > hole.radius() + tol) square_cut = true;
            }
            if (outside) continue;

            const bool on_rect = (i == 0 || i == lat.nx_ - 1 || j == 0 || j == lat.ny_ - 1);
            lat.classes_[node] =
                (on_rect || on_hole || square_cut) ? NodeClass::Boundary : NodeClass::Interior;
        }
    }

    for (std::size_t h = 0; h < geom.holes.size(); ++h) {
        if (hole_hits[h] == 0) {
            throw std::invalid_argument("lattice: hole " + std::to_string(h) +
                                        " is too small to be resolved (no node inside)");
        }
    }

    lat.rebuild_neighbor_table(false, false);
    lat.refresh_second_row();
    lat.rebuild_class_lists();
    lat.validate();
    return lat;
}

Lattice Lattice::periodic(int nx, int ny, double dh, bool wrap_x, bool wrap_y) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("lattice: grid needs nx,ny >= 1");
    if ((wrap_x && nx < 3) || (wrap_y && ny < 3)) {
        throw std::invalid_argument("lattice: wrapping an axis needs at least 3 nodes on it");
    }
    Lattice lat;
    lat.nx_ = nx;
    lat.ny_ = ny;
    lat.dh_ = dh;
    lat.classes_.assign(nx * ny, NodeClass::Interior);
    if (!wrap_x) {
        for (int j = 0; j < ny; ++j) {
            lat.classes_[lat.index(0, j)] = NodeClass::Boundary;
            lat.classes_[lat.index(nx - 1, j)] = NodeClass::Boundary;
        }
    }
    if (!wrap_y) {
        for (int i = 0; i < nx; ++i) {
            lat.classes_[lat.index(i, 0)] = NodeClass::Boundary;
            lat.classes_[lat.index(i, ny - 1)] = NodeClass::Boundary;
        }
    }
    lat.rebuild_neighbor_table(wrap_x, wrap_y);
    lat.refresh_second_row();
    lat.rebuild_class_lists();
    return lat;
}

void Lattice::rebuild_neighbor_table(bool wrap_x, bool wrap_y) {
    neighbors_.assign(static_cast<std::size_t>(node_count()) * 4, -1);
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            const int node = index(i, j);
            if (!material(node)) continue;
            for (int alpha = 1; alpha <= 4; ++alpha) {
                const auto step = link_step(alpha);
                int ii = i + step[0];
                int jj = j + step[1];
                if (wrap_x) ii = (ii + nx_) % nx_;
                if (wrap_y) jj = (jj + ny_) % ny_;
                if (ii < 0 || ii >= nx_ || jj < 0 || jj >= ny_) continue;
                const int other = index(ii, jj);
                if (material(other)) neighbors_[node * 4 + (alpha - 1)] = other;
            }
        }
    }
}

void Lattice::refresh_second_row() {
    for (int node = 0; node < node_count(); ++node) {
        if (classes_[node] == NodeClass::SecondRow) classes_[node] = NodeClass::Interior;
    }
    for (int node = 0; node < node_count(); ++node) {
        if (classes_[node] != NodeClass::Interior) continue;
        for (int alpha = 1; alpha <= 4; ++alpha) {
            const int nb = neighbor(node, alpha);
            if (nb >= 0 && classes_[nb] == NodeClass::Boundary) {
                classes_[node] = NodeClass::SecondRow;
                break;
            }
        }
    }
}

void Lattice::rebuild_class_lists() {
    for (auto& v : by_class_) v.clear();
    for (int node = 0; node < node_count(); ++node) {
        by_class_[static_cast<int>(classes_[node])].push_back(node);
    }
}

ClassCounts Lattice::counts() const {
    ClassCounts c;
    c.outside = static_cast<int>(by_class_[0].size());
    c.boundary = static_cast<int>(by_class_[1].size());
    c.second_row = static_cast<int>(by_class_[2].size());
    c.interior = static_cast<int>(by_class_[3].size());
    return c;
}

const std::vector<int>& Lattice::nodes_of(NodeClass c) const {
    return by_class_[static_cast<int>(c)];
}

int Lattice::nearest_material_node(const Vec2& p) const {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int node = 0; node < node_count(); ++node) {
        if (!material(node)) continue;
        const double d = norm(coord(node) - p);
        if (d < best_d) {
            best_d = d;
            best = node;
        }
    }
    if (best < 0) throw std::runtime_error("lattice: no material node");
    return best;
}

void Lattice::reclassify_outside(int node) {
    classes_[node] = NodeClass::Outside;
    for (int alpha = 1; alpha <= 4; ++alpha) {
        const int nb = neighbors_[node * 4 + (alpha - 1)];
        if (nb >= 0) neighbors_[nb * 4 + (opposite(alpha) - 1)] = -1;
        neighbors_[node * 4 + (alpha - 1)] = -1;
    }
    refresh_second_row();
    rebuild_class_lists();
}

void Lattice::validate() const {
    for (int node = 0; node < node_count(); ++node) {
        for (int alpha = 1; alpha <= 4; ++alpha) {
            const int nb = neighbor(node, alpha);
            if (nb < 0) continue;
            if (!material(node) || !material(nb)) {
                throw std::runtime_error("lattice: neighbor link touches an outside node");
            }
            if (neighbor(nb, opposite(alpha)) != node) {
                throw std::runtime_error("lattice: neighbor table is not symmetric");
            }
        }
        if (classes_[node] == NodeClass::Boundary && node_count() > 1) {
            bool linked = false;
            for (int alpha = 1; alpha <= 4; ++alpha) {
                if (neighbor(node, alpha) >= 0) {
                    linked = true;
                    break;
                }
            }
            if (!linked) {
                throw std::runtime_error(
                    "lattice: boundary node " + std::to_string(node) +
                    " is isolated (geometry feature under-resolved)");
            }
        }
    }
}

}  // namespace pslbm
