#pragma once

#include <array>
#include <utility>
#include <vector>

#include "pslbm/fields.hpp"
#include "pslbm/lattice.hpp"
#include "pslbm/material.hpp"

namespace pslbm {

// D2Q5 BGK parameters for one scalar wave field. Link velocities are
// c0 = 0, c1 = (c,0), c2 = (0,c), c3 = (-c,0), c4 = (0,-c) with c = dh/dt.
// The relaxation time is fixed at dt/2, so collision is f* = 2 feq - f and
// the modeled wave speed is sqrt(2a) * c.
struct LbmParams {
    double a0 = 0.0;  // rest-link equilibrium weight
    double a = 0.0;   // moving-link equilibrium weight, a0 + 4a = 1
    double b = 1.0;   // momentum coupling weight, fixed at 1
    double dh = 0.0;
    double dt = 0.0;

    double c() const { return dh / dt; }
    double wave_speed() const { return std::sqrt(2.0 * a) * c(); }

    static LbmParams from_weights(double a0, double dh, double dt);
};

// Derive the pair of parameter sets (dilatation field first, rotation field
// second) sharing one dt from the material speeds, the spacing, and the
// rest weight of the dilatation field. The rotation weight follows from the
// two fields sharing the lattice: a_rot = (cs/cd)^2 * a_dil. The shared
// time step dt = (dh/cd) * sqrt(2 a_dil) keeps cd*dt/dh = sqrt(2 a_dil) <= 1.
std::pair<LbmParams, LbmParams> derive_lbm_params(const Material& mat, double dh, double a0_dil);

// Populations for one wave field, one vector per link direction.
struct WaveLbmField {
    std::array<std::vector<double>, 5> f;

    WaveLbmField() = default;
    explicit WaveLbmField(const Lattice& lat) {
        for (auto& v : f) v.assign(lat.node_count(), 0.0);
    }
    int size() const { return static_cast<int>(f[0].size()); }

    double value_at(int node) const {
        return f[0][node] + f[1][node] + f[2][node] + f[3][node] + f[4][node];
    }
    Vec2 momentum_at(int node, double c) const {
        return {c * (f[1][node] - f[3][node]), c * (f[2][node] - f[4][node])};
    }
};

std::array<double, 5> equilibrium(double value, const Vec2& momentum, const LbmParams& p);

// Post-collision populations at one node: f* = 2 feq(value, J) - f with the
// node's own moments. Conserves both moments exactly.
std::array<double, 5> collide_node(const std::array<double, 5>& f, const LbmParams& p);

// Whole-field collision into dst (dst may alias src).
void collide(const WaveLbmField& src, const LbmParams& p, const Lattice& lat, WaveLbmField& dst);

// Streaming: every link whose destination is a material node transports the
// source post-collision value; rest populations stay. Links without a
// material source keep the destination's pre-collision value (no transport).
void stream(const WaveLbmField& pre, const WaveLbmField& post, const Lattice& lat,
            WaveLbmField& dst);

// Zeroth and first moments of the populations at material nodes.
void macro_moments(const WaveLbmField& field, const LbmParams& p, const Lattice& lat,
                   ScalarField& value, VectorField& momentum);

// Rebuild a node's populations from a fresh scalar value and a retained
// momentum: f0 = a0*v, falpha = a*v + b*(calpha . J)/(2c^2).
std::array<double, 5> rebuild_populations(double value_new, const Vec2& momentum_old,
                                          const LbmParams& p);

}  // namespace pslbm
