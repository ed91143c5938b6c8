#pragma once

#include <optional>
#include <vector>

#include "pslbm/boundary.hpp"
#include "pslbm/boundary_cell.hpp"
#include "pslbm/fields.hpp"
#include "pslbm/lattice.hpp"
#include "pslbm/material.hpp"
#include "pslbm/solver.hpp"

namespace pslbm {

// Default time-step fraction of the pressure-wave grid transit.
inline constexpr double kFdmCourant = 0.4;

// Independent cross-check solver: the displacement-form equation of motion
// rho*udd = (lambda+mu) grad(div u) + mu lap(u) discretized directly with
// second-order stencils. Positions advance with the begin-of-step
// acceleration and velocities with the trapezoidal rule, which keeps the
// scheme stable at practical time steps. It shares the boundary-condition
// code path with the lattice solver but no wave-field machinery.
class NavierFdmSolver {
  public:
    struct Config {
        Material material;
        double dt = 0.0;  // 0 selects kFdmCourant * dh / cd
    };

    NavierFdmSolver(const Lattice& lat, const BoundaryCells& cells,
                    const BoundaryConditions& bcs, const Config& cfg);

    void initialize(const VectorField& u0, const VectorField& v0);

    enum class StepResult { Ok, NonFinite };
    StepResult step();

    double time() const { return static_cast<double>(step_count_) * dt_; }
    long step_count() const { return step_count_; }
    double dt() const { return dt_; }
    const Lattice& lattice() const { return lat_; }

    const VectorField& displacement() const { return u_; }
    const VectorField& velocity() const { return v_; }

    const std::optional<AbortInfo>& abort_info() const { return abort_; }

  private:
    const Lattice& lat_;
    Material mat_;
    double dt_ = 0.0;
    BoundaryDriver boundary_;
    VectorField u_, v_, acc_, acc_end_;
    std::vector<int> update_nodes_;
    long step_count_ = 0;
    std::optional<AbortInfo> abort_;
};

}  // namespace pslbm
