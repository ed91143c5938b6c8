#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pslbm/boundary_cell.hpp"
#include "pslbm/geometry.hpp"
#include "pslbm/lattice.hpp"

namespace pslbm {

// Scalar load history applied to a traction direction.
struct LoadCurve {
    enum class Kind { Zero, RampHold, LinearRamp };
    Kind kind = Kind::Zero;
    double magnitude = 0.0;  // plateau value (RampHold)
    double ramp_time = 0.0;  // time to reach the plateau (RampHold)
    double rate = 0.0;       // slope (LinearRamp)

    double operator()(double t) const {
        if (t <= 0.0) return 0.0;
        switch (kind) {
            case Kind::Zero: return 0.0;
            case Kind::RampHold:
                return t < ramp_time ? magnitude * (t / ramp_time) : magnitude;
            case Kind::LinearRamp: return rate * t;
        }
        return 0.0;
    }

    static LoadCurve zero() { return {}; }
    static LoadCurve ramp_hold(double magnitude, double ramp_time);
    static LoadCurve linear_ramp(double rate);
};

enum class BcKind { Neumann, Dirichlet };

// Rule attached to one geometry feature (a rectangle edge or a hole).
struct FeatureRule {
    BcKind kind = BcKind::Neumann;
    // Neumann: traction = direction * load(t) at the segment midpoint.
    Vec2 direction;
    LoadCurve load;
    // Dirichlet: prescribed displacement, optionally time dependent.
    Vec2 value;
    std::function<Vec2(double)> value_fn;  // overrides value when set

    Vec2 traction(double t) const { return direction * load(t); }
    Vec2 target(double t) const { return value_fn ? value_fn(t) : value; }

    static FeatureRule traction_free() { return {}; }
    static FeatureRule traction_load(const Vec2& direction, const LoadCurve& load);
    static FeatureRule fixed(const Vec2& value);
};

// Per-feature rules resolved onto boundary nodes. A node whose cell touches
// both Dirichlet and Neumann features is treated as Dirichlet.
class BoundaryConditions {
  public:
    void set_rule(int feature, const FeatureRule& rule) { rules_[feature] = rule; }
    const FeatureRule& rule(int feature) const;
    bool has_rule(int feature) const { return rules_.count(feature) != 0; }

    // Kind and (for Dirichlet nodes) the governing rule for each Boundary
    // node. Throws when a cell references a feature without a rule.
    void resolve(const Lattice& lat, const BoundaryCells& cells);

    BcKind node_kind(int node) const { return node_kind_[node]; }
    Vec2 dirichlet_target(int node, double t) const;
    Vec2 traction(const BoundaryCell::ExternalSegment& seg, double t) const;

  private:
    std::map<int, FeatureRule> rules_;
    std::vector<BcKind> node_kind_;
    std::vector<int> dirichlet_feature_;
};

}  // namespace pslbm
