#pragma once

#include <cmath>
#include <vector>

namespace pslbm {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
// Rotate by +90 degrees; used to turn edge tangents into normals.
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

struct CircularHole {
    Vec2 center;
    double diameter = 0.0;
    double radius() const { return 0.5 * diameter; }
};

// Rectangular plate with optional circular holes. The material region is the
// closed rectangle [0,width] x [0,height] minus the open disks.
struct Geometry {
    double width = 0.0;
    double height = 0.0;
    std::vector<CircularHole> holes;

    // Throws std::invalid_argument for non-positive dimensions, holes not
    // strictly inside the rectangle, or mutually intersecting holes.
    void validate() const;

    bool inside_material(const Vec2& p) const;

    // Signed distance to the nearest hole surface (positive outside the
    // hole). Returns +infinity when there are no holes.
    double hole_clearance(const Vec2& p) const;
};

}  // namespace pslbm
