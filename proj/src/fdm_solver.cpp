#include "pslbm/fdm_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "pslbm/fd_ops.hpp"

namespace pslbm {

NavierFdmSolver::NavierFdmSolver(const Lattice& lat, const BoundaryCells& cells,
                                 const BoundaryConditions& bcs, const Config& cfg)
    : lat_(lat),
      mat_(cfg.material),
      boundary_(lat, cells, bcs, cfg.material),
      u_(lat),
      v_(lat),
      acc_(lat),
      acc_end_(lat) {
    const double cd = mat_.cd();
    dt_ = cfg.dt > 0.0 ? cfg.dt : kFdmCourant * lat.dh() / cd;
    if (cd * dt_ / lat.dh() > 0.5) {
        throw std::invalid_argument("fdm: time step exceeds the explicit stability bound");
    }
    for (int node = 0; node < lat.node_count(); ++node) {
        const NodeClass c = lat.node_class(node);
        if (c == NodeClass::Interior || c == NodeClass::SecondRow) update_nodes_.push_back(node);
    }
}

void NavierFdmSolver::initialize(const VectorField& u0, const VectorField& v0) {
    u_ = u0;
    v_ = v0;
    step_count_ = 0;
    abort_.reset();
}

NavierFdmSolver::StepResult NavierFdmSolver::step() {
    const double t_new = static_cast<double>(step_count_ + 1) * dt_;
    const double lam_mu = (mat_.lambda + mat_.mu) / mat_.rho;
    const double c_shear = mat_.mu / mat_.rho;

    auto navier_acceleration = [&](VectorField& acc) {
        for (const int node : update_nodes_) {
            const double ux_xx = d2x_at(u_.x, lat_, node);
            const double ux_yy = d2y_at(u_.x, lat_, node);
            const double uy_xx = d2x_at(u_.y, lat_, node);
            const double uy_yy = d2y_at(u_.y, lat_, node);
            const double ux_xy = dxy_at(u_.x, lat_, node);
            const double uy_xy = dxy_at(u_.y, lat_, node);
            acc.x[node] = lam_mu * (ux_xx + uy_xy) + c_shear * (ux_xx + ux_yy);
            acc.y[node] = lam_mu * (ux_xy + uy_yy) + c_shear * (uy_xx + uy_yy);
        }
    };

    navier_acceleration(acc_);
    boundary_.apply(u_, v_, t_new, dt_, acc_);
    newmark_positions(u_, v_, acc_, lat_, dt_);

    // End-of-step acceleration from the advanced displacements. Dirichlet
    // nodes keep the landing acceleration computed above so the prescribed
    // motion stays exact.
    acc_end_ = acc_;
    navier_acceleration(acc_end_);
    boundary_.apply(u_, v_, t_new, dt_, acc_end_, /*neumann_only=*/true);
    newmark_velocities(v_, acc_, acc_end_, lat_, dt_);
    ++step_count_;

    for (const int node : update_nodes_) {
        if (!std::isfinite(u_.x[node]) || !std::isfinite(u_.y[node])) {
            abort_ = AbortInfo{step_count_, time(), node};
            return StepResult::NonFinite;
        }
    }
    return StepResult::Ok;
}

}  // namespace pslbm
