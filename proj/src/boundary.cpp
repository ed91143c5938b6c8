#include "pslbm/boundary.hpp"

#include <stdexcept>
#include <string>

namespace pslbm {

LoadCurve LoadCurve::ramp_hold(double magnitude, double ramp_time) {
    if (!(ramp_time > 0.0)) throw std::invalid_argument("load: ramp time must be positive");
    LoadCurve c;
    c.kind = Kind::RampHold;
    c.magnitude = magnitude;
    c.ramp_time = ramp_time;
    return c;
}

LoadCurve LoadCurve::linear_ramp(double rate) {
    LoadCurve c;
    c.kind = Kind::LinearRamp;
    c.rate = rate;
    return c;
}

FeatureRule FeatureRule::traction_load(const Vec2& direction, const LoadCurve& load) {
    FeatureRule r;
    r.direction = direction;
    r.load = load;
    return r;
}

FeatureRule FeatureRule::fixed(const Vec2& value) {
    FeatureRule r;
    r.kind = BcKind::Dirichlet;
    r.value = value;
    return r;
}

const FeatureRule& BoundaryConditions::rule(int feature) const {
    auto it = rules_.find(feature);
    if (it == rules_.end()) {
        throw std::invalid_argument("boundary: no rule for feature " + std::to_string(feature));
    }
    return it->second;
}

void BoundaryConditions::resolve(const Lattice& lat, const BoundaryCells& cells) {
    node_kind_.assign(lat.node_count(), BcKind::Neumann);
    dirichlet_feature_.assign(lat.node_count(), -1);
    for (const int node : lat.nodes_of(NodeClass::Boundary)) {
        const BoundaryCell* cell = cells.cell_for(node);
        if (cell == nullptr) throw std::runtime_error("boundary: boundary node without a cell");
        for (const auto& seg : cell->external) {
            const FeatureRule& r = rule(seg.feature);
            if (r.kind == BcKind::Dirichlet) {
                node_kind_[node] = BcKind::Dirichlet;
                dirichlet_feature_[node] = seg.feature;
            }
        }
    }
}

Vec2 BoundaryConditions::dirichlet_target(int node, double t) const {
    return rule(dirichlet_feature_[node]).target(t);
}

Vec2 BoundaryConditions::traction(const BoundaryCell::ExternalSegment& seg, double t) const {
    return rule(seg.feature).traction(t);
}

}  // namespace pslbm
