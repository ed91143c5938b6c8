#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "pslbm/boundary.hpp"
#include "pslbm/boundary_cell.hpp"
#include "pslbm/fd_ops.hpp"
#include "pslbm/fields.hpp"
#include "pslbm/lattice.hpp"
#include "pslbm/material.hpp"
#include "pslbm/wave_lbm.hpp"

namespace pslbm {

// Acceleration from the split wave fields at a node away from the boundary:
// udd = cd^2 * grad(dil) - cs^2 * curl_out_of_plane(rot).
Vec2 interior_acceleration_at(const ScalarField& dil, const ScalarField& rot, const Material& mat,
                              const Lattice& lat, int node);

// Momentum balance over a clipped boundary cell. Internal faces carry the
// mean of the nodal stresses on both sides; external faces carry the given
// traction at their midpoint.
Vec2 neumann_acceleration(const BoundaryCell& cell, const TensorField& sigma, const Material& mat,
                          const std::function<Vec2(const BoundaryCell::ExternalSegment&)>& traction);

// Acceleration that makes the explicit update land exactly on the target
// displacement.
Vec2 dirichlet_acceleration(const Vec2& target, const Vec2& u, const Vec2& v, double dt);

// u += dt*v + dt^2/2*a; v += dt*a.
void newmark_integrate(VectorField& u, VectorField& v, const VectorField& a, const Lattice& lat,
                       double dt);

// Two-phase form of the same update with a trapezoidal velocity rule:
// u += dt*v + dt^2/2*a_begin, then v += dt/2*(a_begin + a_end) once the
// end-of-step acceleration is available. The single-acceleration form above
// feeds energy into every mode at a rate that grows with the time step; the
// trapezoidal rule is neutral and keeps large explicit steps stable.
void newmark_positions(VectorField& u, const VectorField& v, const VectorField& a,
                       const Lattice& lat, double dt);
void newmark_velocities(VectorField& v, const VectorField& a_begin, const VectorField& a_end,
                        const Lattice& lat, double dt);

struct AbortInfo {
    long step = 0;
    double time = 0.0;
    int node = -1;
};

// Shared boundary handling: evaluates the acceleration of every Boundary
// node for a step advancing the displacements to time t_new. Both solvers
// drive their boundaries through this one code path.
class BoundaryDriver {
  public:
    BoundaryDriver(const Lattice& lat, const BoundaryCells& cells, const BoundaryConditions& bcs,
                   const Material& mat);

    // Fills acc at every Boundary node. With neumann_only set, Dirichlet
    // entries are left untouched (used for end-of-step accelerations, where
    // the landing acceleration computed at the start of the step must also
    // govern the velocity update).
    void apply(const VectorField& u, const VectorField& v, double t_new, double dt,
               VectorField& acc, bool neumann_only = false);

  private:
    const Lattice& lat_;
    const BoundaryCells& cells_;
    const BoundaryConditions& bcs_;
    Material mat_;
    TensorField sigma_;              // filled only where the cells need it
    std::vector<int> stress_nodes_;  // boundary nodes plus their face neighbors
};

// Coupled solver: two D2Q5 wave fields for dilatation and rotation advance
// the interior, explicit integration reconstructs displacements, boundary
// nodes are driven by the momentum balance (Neumann) or prescribed motion
// (Dirichlet) and re-enter the lattice through population rebuilds.
class ElastodynSolver {
  public:
    struct Config {
        LbmParams dil;
        LbmParams rot;
        Material material;
        int sync_every = 0;  // 0 disables periodic resynchronization
    };

    ElastodynSolver(const Lattice& lat, const BoundaryCells& cells,
                    const BoundaryConditions& bcs, const Config& cfg);

    void initialize(const VectorField& u0, const VectorField& v0);

    enum class StepResult { Ok, NonFinite };
    StepResult step();

    // Recompute both wave fields from the displacement field and rebuild all
    // populations, keeping each node's momentum.
    void synchronize();

    double time() const { return static_cast<double>(step_count_) * cfg_.dil.dt; }
    long step_count() const { return step_count_; }
    double dt() const { return cfg_.dil.dt; }
    const Lattice& lattice() const { return lat_; }
    const Config& config() const { return cfg_; }

    const VectorField& displacement() const { return u_; }
    const VectorField& velocity() const { return v_; }
    const ScalarField& dilatation() const { return dil_value_; }
    const ScalarField& rotation() const { return rot_value_; }

    // Mismatch between the population sums and the derivative fields of the
    // current displacements.
    double consistency_error_at(int node) const;
    ScalarField consistency_error() const;
    double max_consistency_error() const;

    const std::optional<AbortInfo>& abort_info() const { return abort_; }

  private:
    void advance_field(const WaveLbmField& cur, WaveLbmField& next, const LbmParams& p,
                       ScalarField& value, bool dilatational);
    bool scan_non_finite();

    const Lattice& lat_;
    const BoundaryCells& cells_;
    const BoundaryConditions& bcs_;
    Config cfg_;
    BoundaryDriver boundary_;

    VectorField u_, v_, acc_;
    ScalarField dil_value_, rot_value_;
    WaveLbmField dil_f_, rot_f_;        // populations at the current time
    WaveLbmField dil_next_, rot_next_;  // being assembled for t + dt
    WaveLbmField post_;                 // post-collision scratch
    // Exponentially averaged streamed-arrival momentum at boundary nodes;
    // the per-step rebuild erases the momentum moment, so it is tracked here.
    VectorField dil_jmem_, rot_jmem_;
    std::vector<int> update_nodes_;     // Interior and SecondRow
    long step_count_ = 0;
    std::optional<AbortInfo> abort_;
};

}  // namespace pslbm
