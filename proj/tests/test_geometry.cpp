#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pslbm/geometry.hpp"

using pslbm::CircularHole;
using pslbm::Geometry;
using pslbm::Vec2;

TEST_CASE("vec2 arithmetic and norms") {
    const Vec2 a{3.0, 4.0};
    const Vec2 b{-1.0, 2.0};
    CHECK((a + b).x == doctest::Approx(2.0));
    CHECK((a - b).y == doctest::Approx(2.0));
    CHECK((2.0 * a).x == doctest::Approx(6.0));
    CHECK(pslbm::dot(a, b) == doctest::Approx(5.0));
    CHECK(pslbm::norm(a) == doctest::Approx(5.0));
    // Counter-clockwise quarter turn.
    const Vec2 p = pslbm::perp(Vec2{1.0, 0.0});
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(1.0));
}

TEST_CASE("solid rectangle membership") {
    const Geometry g{2.0, 1.0, {}};
    g.validate();
    CHECK(g.inside_material({0.0, 0.0}));
    CHECK(g.inside_material({2.0, 1.0}));
    CHECK(g.inside_material({1.0, 0.5}));
    CHECK_FALSE(g.inside_material({-0.01, 0.5}));
    CHECK_FALSE(g.inside_material({1.0, 1.01}));
}

TEST_CASE("holes remove an open disk") {
    const Geometry g{1.0, 1.0, {CircularHole{{0.5, 0.5}, 0.2}}};
    g.validate();
    CHECK_FALSE(g.inside_material({0.5, 0.5}));
    CHECK_FALSE(g.inside_material({0.59, 0.5}));
    // Points on the circle itself belong to the material (closed complement).
    CHECK(g.inside_material({0.6, 0.5}));
    CHECK(g.inside_material({0.61, 0.5}));
    CHECK(g.hole_clearance({0.8, 0.5}) == doctest::Approx(0.2));
}

TEST_CASE("validation rejects bad inputs") {
    CHECK_THROWS_AS((Geometry{0.0, 1.0, {}}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Geometry{1.0, -1.0, {}}.validate()), std::invalid_argument);
    // Hole touching the border is not strictly inside.
    CHECK_THROWS_AS((Geometry{1.0, 1.0, {CircularHole{{0.1, 0.5}, 0.2}}}.validate()),
                    std::invalid_argument);
    // Zero or negative diameter.
    CHECK_THROWS_AS((Geometry{1.0, 1.0, {CircularHole{{0.5, 0.5}, 0.0}}}.validate()),
                    std::invalid_argument);
    // Overlapping holes.
    CHECK_THROWS_AS((Geometry{1.0, 1.0,
                              {CircularHole{{0.4, 0.5}, 0.2}, CircularHole{{0.5, 0.5}, 0.2}}}
                         .validate()),
                    std::invalid_argument);
}

TEST_CASE("disjoint holes are accepted") {
    const Geometry g{1.0, 1.0,
                     {CircularHole{{0.3, 0.3}, 0.2}, CircularHole{{0.7, 0.7}, 0.2}}};
    CHECK_NOTHROW(g.validate());
}
