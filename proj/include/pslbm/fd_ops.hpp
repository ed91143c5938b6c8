#pragma once

#include "pslbm/fields.hpp"
#include "pslbm/lattice.hpp"
#include "pslbm/material.hpp"

namespace pslbm {

// Counts of stencil downgrades. first_order: a one-sided two-point (or
// three-point second-derivative) stencil had to be used. missing: no usable
// neighbor on either side, derivative reported as zero.
struct FdDiagnostics {
    long first_order = 0;
    long missing = 0;
};

// First derivatives at a single material node. Central differences where
// both neighbors exist, one-sided three-point stencils otherwise (exact on
// quadratics), degrading to two-point stencils near thin features. Stencils
// walk the neighbor table and therefore never read Outside nodes.
double ddx_at(const std::vector<double>& g, const Lattice& lat, int node,
              FdDiagnostics* diag = nullptr);
double ddy_at(const std::vector<double>& g, const Lattice& lat, int node,
              FdDiagnostics* diag = nullptr);

// Second derivatives (used by the displacement-form reference solver).
double d2x_at(const std::vector<double>& g, const Lattice& lat, int node,
              FdDiagnostics* diag = nullptr);
double d2y_at(const std::vector<double>& g, const Lattice& lat, int node,
              FdDiagnostics* diag = nullptr);
double dxy_at(const std::vector<double>& g, const Lattice& lat, int node,
              FdDiagnostics* diag = nullptr);

double div2d_at(const VectorField& u, const Lattice& lat, int node,
                FdDiagnostics* diag = nullptr);
// Out-of-plane component of the curl of the in-plane displacement field.
double curl2d_at(const VectorField& u, const Lattice& lat, int node,
                 FdDiagnostics* diag = nullptr);

ScalarField div2d(const VectorField& u, const Lattice& lat, FdDiagnostics* diag = nullptr);
ScalarField curl2d(const VectorField& u, const Lattice& lat, FdDiagnostics* diag = nullptr);

VectorField grad_scalar(const ScalarField& s, const Lattice& lat, FdDiagnostics* diag = nullptr);
// Curl of the out-of-plane vector field s*ez restricted to the plane:
// (ds/dy, -ds/dx).
VectorField curl_out_of_plane(const ScalarField& s, const Lattice& lat,
                              FdDiagnostics* diag = nullptr);

// Plane-strain Hooke stress from the displacement field.
SymTensor2 stress_at(const VectorField& u, const Material& mat, const Lattice& lat, int node,
                     FdDiagnostics* diag = nullptr);
TensorField stress(const VectorField& u, const Material& mat, const Lattice& lat,
                   FdDiagnostics* diag = nullptr);

}  // namespace pslbm
