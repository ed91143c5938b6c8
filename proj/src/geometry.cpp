#include "pslbm/geometry.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace pslbm {

void Geometry::validate() const {
    if (!(width > 0.0) || !(height > 0.0)) {
        throw std::invalid_argument("geometry: rectangle dimensions must be positive");
    }
    for (std::size_t i = 0; i < holes.size(); ++i) {
        const CircularHole& h = holes[i];
        if (!(h.diameter > 0.0)) {
            throw std::invalid_argument("geometry: hole diameter must be positive");
        }
        const double r = h.radius();
        if (h.center.x - r <= 0.0 || h.center.x + r >= width ||
            h.center.y - r <= 0.0 || h.center.y + r >= height) {
            throw std::invalid_argument("geometry: hole " + std::to_string(i) +
                                        " not strictly inside the rectangle");
        }
        for (std::size_t j = i + 1; j < holes.size(); ++j) {
            const double d = norm(holes[j].center - h.center);
            if (d <= r + holes[j].radius()) {
                throw std::invalid_argument("geometry: holes " + std::to_string(i) + " and " +
                                            std::to_string(j) + " intersect");
            }
        }
    }
}

bool Geometry::inside_material(const Vec2& p) const {
    if (p.x < 0.0 || p.x > width || p.y < 0.0 || p.y > height) return false;
    for (const CircularHole& h : holes) {
        // Holes remove an open disk, so points on the circle itself stay in
        // the material. The slack keeps that true under round-off in the
        // distance evaluation.
        const double slack = 1e-12 * h.radius();
        if (norm(p - h.center) - h.radius() < -slack) return false;
    }
    return true;
}

double Geometry::hole_clearance(const Vec2& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const CircularHole& h : holes) {
        best = std::min(best, norm(p - h.center) - h.radius());
    }
    return best;
}

}  // namespace pslbm
