#include "pslbm/solver.hpp"

#include <algorithm>
#include <cmath>

namespace pslbm {

namespace {
// Blend factor for the exponential moving average of boundary-node momentum
// (smaller means a longer memory; 0.1 averages over roughly ten steps).
constexpr double kMomentumBlend = 0.1;
}  // namespace

Vec2 interior_acceleration_at(const ScalarField& dil, const ScalarField& rot, const Material& mat,
                              const Lattice& lat, int node) {
    const double cd2 = (mat.lambda + 2.0 * mat.mu) / mat.rho;
    const double cs2 = mat.mu / mat.rho;
    const double dil_dx = ddx_at(dil.v, lat, node);
    const double dil_dy = ddy_at(dil.v, lat, node);
    const double rot_dx = ddx_at(rot.v, lat, node);
    const double rot_dy = ddy_at(rot.v, lat, node);
    // curl of rot*ez restricted to the plane is (rot_dy, -rot_dx).
    return {cd2 * dil_dx - cs2 * rot_dy, cd2 * dil_dy + cs2 * rot_dx};
}

Vec2 neumann_acceleration(const BoundaryCell& cell, const TensorField& sigma, const Material& mat,
                          const std::function<Vec2(const BoundaryCell::ExternalSegment&)>& traction) {
    Vec2 force;
    const SymTensor2 sk = sigma.at(cell.node);
    for (const auto& seg : cell.internal) {
        const SymTensor2 sr = sigma.at(seg.neighbor);
        const SymTensor2 mean{0.5 * (sk.xx + sr.xx), 0.5 * (sk.yy + sr.yy),
                              0.5 * (sk.xy + sr.xy)};
        force += mean.apply(seg.normal) * seg.length;
    }
    for (const auto& seg : cell.external) {
        force += traction(seg) * seg.length;
    }
    return force / (mat.rho * cell.volume);
}

Vec2 dirichlet_acceleration(const Vec2& target, const Vec2& u, const Vec2& v, double dt) {
    return (target - u) * (2.0 / (dt * dt)) - v * (2.0 / dt);
}

void newmark_integrate(VectorField& u, VectorField& v, const VectorField& a, const Lattice& lat,
                       double dt) {
    const double half_dt2 = 0.5 * dt * dt;
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        u.x[node] += dt * v.x[node] + half_dt2 * a.x[node];
        u.y[node] += dt * v.y[node] + half_dt2 * a.y[node];
        v.x[node] += dt * a.x[node];
        v.y[node] += dt * a.y[node];
    }
}

void newmark_positions(VectorField& u, const VectorField& v, const VectorField& a,
                       const Lattice& lat, double dt) {
    const double half_dt2 = 0.5 * dt * dt;
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        u.x[node] += dt * v.x[node] + half_dt2 * a.x[node];
        u.y[node] += dt * v.y[node] + half_dt2 * a.y[node];
    }
}

void newmark_velocities(VectorField& v, const VectorField& a_begin, const VectorField& a_end,
                        const Lattice& lat, double dt) {
    const double half_dt = 0.5 * dt;
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        v.x[node] += half_dt * (a_begin.x[node] + a_end.x[node]);
        v.y[node] += half_dt * (a_begin.y[node] + a_end.y[node]);
    }
}

BoundaryDriver::BoundaryDriver(const Lattice& lat, const BoundaryCells& cells,
                               const BoundaryConditions& bcs, const Material& mat)
    : lat_(lat), cells_(cells), bcs_(bcs), mat_(mat), sigma_(lat) {
    std::vector<char> in_stress_set(lat.node_count(), 0);
    for (const int node : lat_.nodes_of(NodeClass::Boundary)) {
        in_stress_set[node] = 1;
        const BoundaryCell* cell = cells_.cell_for(node);
        if (cell != nullptr) {
            for (const auto& seg : cell->internal) in_stress_set[seg.neighbor] = 1;
        }
    }
    for (int node = 0; node < lat.node_count(); ++node) {
        if (in_stress_set[node]) stress_nodes_.push_back(node);
    }
}

void BoundaryDriver::apply(const VectorField& u, const VectorField& v, double t_new, double dt,
                           VectorField& acc, bool neumann_only) {
    for (const int node : stress_nodes_) {
        sigma_.set(node, stress_at(u, mat_, lat_, node));
    }
    for (const int node : lat_.nodes_of(NodeClass::Boundary)) {
        Vec2 a;
        if (bcs_.node_kind(node) == BcKind::Dirichlet) {
            if (neumann_only) continue;
            a = dirichlet_acceleration(bcs_.dirichlet_target(node, t_new), u.at(node),
                                       v.at(node), dt);
        } else {
            const BoundaryCell& cell = *cells_.cell_for(node);
            a = neumann_acceleration(cell, sigma_, mat_, [&](const auto& seg) {
                return bcs_.traction(seg, t_new);
            });
        }
        acc.x[node] = a.x;
        acc.y[node] = a.y;
    }
}

ElastodynSolver::ElastodynSolver(const Lattice& lat, const BoundaryCells& cells,
                                 const BoundaryConditions& bcs, const Config& cfg)
    : lat_(lat),
      cells_(cells),
      bcs_(bcs),
      cfg_(cfg),
      boundary_(lat, cells, bcs, cfg.material),
      u_(lat),
      v_(lat),
      acc_(lat),
      dil_value_(lat),
      rot_value_(lat),
      dil_f_(lat),
      rot_f_(lat),
      dil_next_(lat),
      rot_next_(lat),
      post_(lat),
      dil_jmem_(lat),
      rot_jmem_(lat) {
    for (int node = 0; node < lat.node_count(); ++node) {
        const NodeClass c = lat.node_class(node);
        if (c == NodeClass::Interior || c == NodeClass::SecondRow) update_nodes_.push_back(node);
    }
    initialize(VectorField(lat), VectorField(lat));
}

void ElastodynSolver::initialize(const VectorField& u0, const VectorField& v0) {
    u_ = u0;
    v_ = v0;
    step_count_ = 0;
    abort_.reset();
    dil_jmem_ = VectorField(lat_);
    rot_jmem_ = VectorField(lat_);
    dil_value_ = div2d(u_, lat_);
    rot_value_ = curl2d(u_, lat_);
    for (int node = 0; node < lat_.node_count(); ++node) {
        if (!lat_.material(node)) continue;
        // Populations start at equilibrium with zero momentum.
        const auto fd = rebuild_populations(dil_value_[node], {0.0, 0.0}, cfg_.dil);
        const auto fr = rebuild_populations(rot_value_[node], {0.0, 0.0}, cfg_.rot);
        for (int alpha = 0; alpha < 5; ++alpha) {
            dil_f_.f[alpha][node] = fd[alpha];
            rot_f_.f[alpha][node] = fr[alpha];
        }
    }
}

void ElastodynSolver::advance_field(const WaveLbmField& cur, WaveLbmField& next,
                                    const LbmParams& p, ScalarField& value, bool dilatational) {
    // Relax every node against its own equilibrium.
    collide(cur, p, lat_, post_);

    // Boundary nodes: the value is pinned to the derivative of the fresh
    // displacements, while the momentum moment survives the rewrite. Because
    // the rebuild replaces the populations every step, the momentum is
    // estimated from the arrivals streaming delivers (links without a
    // material source keep the node's previous population), smoothed by an
    // exponential moving average. The ~10-step window is far shorter than
    // any resolved wave period but suppresses the step-scale feedback
    // between the one-sided displacement stencils and the emitted
    // populations that would otherwise pump a slowly growing edge mode.
    // Arrivals are read before any boundary node is overwritten, keeping the
    // pass order-independent.
    VectorField& jmem = dilatational ? dil_jmem_ : rot_jmem_;
    for (const int node : lat_.nodes_of(NodeClass::Boundary)) {
        const double value_new =
            dilatational ? div2d_at(u_, lat_, node) : curl2d_at(u_, lat_, node);
        value[node] = value_new;
        std::array<double, 5> g;
        bool axis_open[2] = {false, false};
        int absent = 0;
        for (int alpha = 1; alpha <= 4; ++alpha) {
            const int src = lat_.neighbor(node, Lattice::opposite(alpha));
            if (src >= 0) {
                g[alpha] = post_.f[alpha][src];
            } else {
                g[alpha] = cur.f[alpha][node];
                axis_open[alpha == 1 || alpha == 3 ? 0 : 1] = true;
                ++absent;
            }
        }
        const double c = p.c();
        const Vec2 arrivals{c * (g[1] - g[3]), c * (g[2] - g[4])};
        Vec2 momentum = arrivals;
        if (absent >= 2) {
            // Convex corner of the node set: half the links are echoes of the
            // node's own state, so the arrival estimate is meaningless there.
            // Pin the value and emit momentum-free populations.
            jmem.x[node] = 0.0;
            jmem.y[node] = 0.0;
            momentum = {0.0, 0.0};
        } else {
            // Only the wall-normal component (the axis with the absent link)
            // is smoothed; the tangential reading is taken as delivered.
            if (axis_open[0]) {
                jmem.x[node] += kMomentumBlend * (arrivals.x - jmem.x[node]);
                momentum.x = jmem.x[node];
            }
            if (axis_open[1]) {
                jmem.y[node] += kMomentumBlend * (arrivals.y - jmem.y[node]);
                momentum.y = jmem.y[node];
            }
        }
        const auto fb = rebuild_populations(value_new, momentum, p);
        for (int alpha = 0; alpha < 5; ++alpha) next.f[alpha][node] = fb[alpha];
    }

    // Second-row transfer: a boundary source hands over the relaxed average
    // of its old and new states. The average of two equilibria is itself an
    // equilibrium, so the factor-2 collision is an identity there up to the
    // residue absorbed by the rebuild.
    for (const int node : lat_.nodes_of(NodeClass::Boundary)) {
        std::array<double, 5> fh;
        for (int alpha = 0; alpha < 5; ++alpha) {
            fh[alpha] = next.f[alpha][node];
        }
        const auto fs = collide_node(fh, p);
        for (int alpha = 0; alpha < 5; ++alpha) post_.f[alpha][node] = fs[alpha];
    }

    // Transport into interior and second-row nodes; links without a material
    // source carry the node's previous value.
    for (const int node : update_nodes_) {
        next.f[0][node] = post_.f[0][node];
        for (int alpha = 1; alpha <= 4; ++alpha) {
            const int src = lat_.neighbor(node, Lattice::opposite(alpha));
            next.f[alpha][node] = (src >= 0) ? post_.f[alpha][src] : cur.f[alpha][node];
        }
    }
}

ElastodynSolver::StepResult ElastodynSolver::step() {
    const double dt = cfg_.dil.dt;
    const double t_new = static_cast<double>(step_count_ + 1) * dt;
    const Material& mat = cfg_.material;

    // Accelerations away from the boundary, from the current wave fields.
    for (const int node : update_nodes_) {
        const Vec2 a = interior_acceleration_at(dil_value_, rot_value_, mat, lat_, node);
        acc_.x[node] = a.x;
        acc_.y[node] = a.y;
    }

    // Boundary accelerations. Loads and targets are evaluated at the time
    // level the displacements are advanced to.
    boundary_.apply(u_, v_, t_new, dt, acc_);

    newmark_integrate(u_, v_, acc_, lat_, dt);

    advance_field(dil_f_, dil_next_, cfg_.dil, dil_value_, true);
    advance_field(rot_f_, rot_next_, cfg_.rot, rot_value_, false);

    std::swap(dil_f_, dil_next_);
    std::swap(rot_f_, rot_next_);

    for (const int node : update_nodes_) {
        dil_value_[node] = dil_f_.value_at(node);
        rot_value_[node] = rot_f_.value_at(node);
    }

    ++step_count_;
    if (cfg_.sync_every > 0 && step_count_ % cfg_.sync_every == 0) synchronize();

    if (scan_non_finite()) return StepResult::NonFinite;
    return StepResult::Ok;
}

void ElastodynSolver::synchronize() {
    for (int node = 0; node < lat_.node_count(); ++node) {
        if (!lat_.material(node)) continue;
        const double dil_new = div2d_at(u_, lat_, node);
        const double rot_new = curl2d_at(u_, lat_, node);
        dil_value_[node] = dil_new;
        rot_value_[node] = rot_new;
        const auto fd = rebuild_populations(dil_new, dil_f_.momentum_at(node, cfg_.dil.c()),
                                            cfg_.dil);
        const auto fr = rebuild_populations(rot_new, rot_f_.momentum_at(node, cfg_.rot.c()),
                                            cfg_.rot);
        for (int alpha = 0; alpha < 5; ++alpha) {
            dil_f_.f[alpha][node] = fd[alpha];
            rot_f_.f[alpha][node] = fr[alpha];
        }
    }
}

bool ElastodynSolver::scan_non_finite() {
    for (int node = 0; node < lat_.node_count(); ++node) {
        if (!lat_.material(node)) continue;
        if (!std::isfinite(u_.x[node]) || !std::isfinite(u_.y[node]) ||
            !std::isfinite(dil_value_[node]) || !std::isfinite(rot_value_[node])) {
            abort_ = AbortInfo{step_count_, time(), node};
            return true;
        }
    }
    return false;
}

double ElastodynSolver::consistency_error_at(int node) const {
    const double ed = dil_f_.value_at(node) - div2d_at(u_, lat_, node);
    const double er = rot_f_.value_at(node) - curl2d_at(u_, lat_, node);
    return std::hypot(ed, er);
}

ScalarField ElastodynSolver::consistency_error() const {
    ScalarField e(lat_);
    for (int node = 0; node < lat_.node_count(); ++node) {
        if (lat_.material(node)) e[node] = consistency_error_at(node);
    }
    return e;
}

double ElastodynSolver::max_consistency_error() const {
    double m = 0.0;
    for (int node = 0; node < lat_.node_count(); ++node) {
        if (lat_.material(node)) m = std::max(m, consistency_error_at(node));
    }
    return m;
}

}  // namespace pslbm
