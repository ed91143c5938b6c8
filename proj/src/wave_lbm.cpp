#include "pslbm/wave_lbm.hpp"

#include <cmath>
#include <stdexcept>

namespace pslbm {

LbmParams LbmParams::from_weights(double a0, double dh, double dt) {
    if (!(a0 >= 0.0) || !(a0 < 1.0)) {
        throw std::invalid_argument("lbm: rest weight must lie in [0, 1)");
    }
    if (!(dh > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("lbm: dh and dt must be positive");
    }
    LbmParams p;
    p.a0 = a0;
    p.a = (1.0 - a0) / 4.0;
    p.b = 1.0;
    p.dh = dh;
    p.dt = dt;
    return p;
}

std::pair<LbmParams, LbmParams> derive_lbm_params(const Material& mat, double dh, double a0_dil) {
    if (!(a0_dil >= 0.0) || !(a0_dil < 1.0)) {
        throw std::invalid_argument("lbm: rest weight must lie in [0, 1)");
    }
    const double a_dil = (1.0 - a0_dil) / 4.0;
    const double cd = mat.cd();
    const double cs = mat.cs();
    const double dt = dh / cd * std::sqrt(2.0 * a_dil);
    const double a_rot = (cs * cs) / (cd * cd) * a_dil;

    LbmParams dil = LbmParams::from_weights(a0_dil, dh, dt);
    LbmParams rot = LbmParams::from_weights(1.0 - 4.0 * a_rot, dh, dt);
    return {dil, rot};
}

std::array<double, 5> equilibrium(double value, const Vec2& momentum, const LbmParams& p) {
    const double c = p.c();
    const double av = p.a * value;
    const double kx = p.b * momentum.x / (2.0 * c);
    const double ky = p.b * momentum.y / (2.0 * c);
    return {p.a0 * value, av + kx, av + ky, av - kx, av - ky};
}

std::array<double, 5> collide_node(const std::array<double, 5>& f, const LbmParams& p) {
    const double value = f[0] + f[1] + f[2] + f[3] + f[4];
    const double c = p.c();
    const Vec2 momentum{c * (f[1] - f[3]), c * (f[2] - f[4])};
    const auto feq = equilibrium(value, momentum, p);
    return {2.0 * feq[0] - f[0], 2.0 * feq[1] - f[1], 2.0 * feq[2] - f[2], 2.0 * feq[3] - f[3],
            2.0 * feq[4] - f[4]};
}

void collide(const WaveLbmField& src, const LbmParams& p, const Lattice& lat, WaveLbmField& dst) {
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        const std::array<double, 5> f{src.f[0][node], src.f[1][node], src.f[2][node],
                                      src.f[3][node], src.f[4][node]};
        const auto fs = collide_node(f, p);
        for (int alpha = 0; alpha < 5; ++alpha) dst.f[alpha][node] = fs[alpha];
    }
}

void stream(const WaveLbmField& pre, const WaveLbmField& post, const Lattice& lat,
            WaveLbmField& dst) {
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        dst.f[0][node] = post.f[0][node];
        for (int alpha = 1; alpha <= 4; ++alpha) {
            const int src = lat.neighbor(node, Lattice::opposite(alpha));
            dst.f[alpha][node] = (src >= 0) ? post.f[alpha][src] : pre.f[alpha][node];
        }
    }
}

void macro_moments(const WaveLbmField& field, const LbmParams& p, const Lattice& lat,
                   ScalarField& value, VectorField& momentum) {
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        value[node] = field.value_at(node);
        momentum.set(node, field.momentum_at(node, p.c()));
    }
}

std::array<double, 5> rebuild_populations(double value_new, const Vec2& momentum_old,
                                          const LbmParams& p) {
    auto f = equilibrium(value_new, momentum_old, p);
    // Let the last population absorb the rounding residue of the summation, so
    // the zeroth moment recovered from the rebuilt populations is value_new
    // exactly (the partial sum sits close enough to value_new for the
    // difference to be lossless whenever the momentum share is subordinate).
    f[4] = value_new - (((f[0] + f[1]) + f[2]) + f[3]);
    return f;
}

}  // namespace pslbm
