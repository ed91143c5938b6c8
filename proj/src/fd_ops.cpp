#include "pslbm/fd_ops.hpp"

#include <stdexcept>

namespace pslbm {

namespace {

inline double first_derivative(const std::vector<double>& g, const Lattice& lat, int node,
                               int alpha_plus, int alpha_minus, FdDiagnostics* diag) {
    const double inv2h = 0.5 / lat.dh();
    const int p1 = lat.neighbor(node, alpha_plus);
    const int m1 = lat.neighbor(node, alpha_minus);
    if (p1 >= 0 && m1 >= 0) return (g[p1] - g[m1]) * inv2h;
    if (p1 >= 0) {
        const int p2 = lat.neighbor(p1, alpha_plus);
        if (p2 >= 0) return (-3.0 * g[node] + 4.0 * g[p1] - g[p2]) * inv2h;
        if (diag) ++diag->first_order;
        return (g[p1] - g[node]) / lat.dh();
    }
    if (m1 >= 0) {
        const int m2 = lat.neighbor(m1, alpha_minus);
        if (m2 >= 0) return (3.0 * g[node] - 4.0 * g[m1] + g[m2]) * inv2h;
        if (diag) ++diag->first_order;
        return (g[node] - g[m1]) / lat.dh();
    }
    if (diag) ++diag->missing;
    return 0.0;
}

inline double second_derivative(const std::vector<double>& g, const Lattice& lat, int node,
                                int alpha_plus, int alpha_minus, FdDiagnostics* diag) {
    const double invh2 = 1.0 / (lat.dh() * lat.dh());
    const int p1 = lat.neighbor(node, alpha_plus);
    const int m1 = lat.neighbor(node, alpha_minus);
    if (p1 >= 0 && m1 >= 0) return (g[p1] - 2.0 * g[node] + g[m1]) * invh2;
    const auto one_sided = [&](int alpha, int n1) -> double {
        const int n2 = lat.neighbor(n1, alpha);
        if (n2 < 0) {
            if (diag) ++diag->missing;
            return 0.0;
        }
        const int n3 = lat.neighbor(n2, alpha);
        if (n3 >= 0) {
            return (2.0 * g[node] - 5.0 * g[n1] + 4.0 * g[n2] - g[n3]) * invh2;
        }
        if (diag) ++diag->first_order;
        return (g[node] - 2.0 * g[n1] + g[n2]) * invh2;
    };
    if (p1 >= 0) return one_sided(alpha_plus, p1);
    if (m1 >= 0) return one_sided(alpha_minus, m1);
    if (diag) ++diag->missing;
    return 0.0;
}

void check_extents(const Lattice& lat) {
    if (lat.nx() < 3 || lat.ny() < 3) {
        throw std::invalid_argument("fd_ops: stencils need at least 3 nodes per axis");
    }
}

}  // namespace

double ddx_at(const std::vector<double>& g, const Lattice& lat, int node, FdDiagnostics* diag) {
    return first_derivative(g, lat, node, 1, 3, diag);
}

double ddy_at(const std::vector<double>& g, const Lattice& lat, int node, FdDiagnostics* diag) {
    return first_derivative(g, lat, node, 2, 4, diag);
}

double d2x_at(const std::vector<double>& g, const Lattice& lat, int node, FdDiagnostics* diag) {
    return second_derivative(g, lat, node, 1, 3, diag);
}

double d2y_at(const std::vector<double>& g, const Lattice& lat, int node, FdDiagnostics* diag) {
    return second_derivative(g, lat, node, 2, 4, diag);
}

double dxy_at(const std::vector<double>& g, const Lattice& lat, int node, FdDiagnostics* diag) {
    // d/dx of (dg/dy), with the same availability policy at both levels.
    const double inv2h = 0.5 / lat.dh();
    const auto dy = [&](int n) { return ddy_at(g, lat, n, diag); };
    const int p1 = lat.neighbor(node, 1);
    const int m1 = lat.neighbor(node, 3);
    if (p1 >= 0 && m1 >= 0) return (dy(p1) - dy(m1)) * inv2h;
    if (p1 >= 0) {
        const int p2 = lat.neighbor(p1, 1);
        if (p2 >= 0) return (-3.0 * dy(node) + 4.0 * dy(p1) - dy(p2)) * inv2h;
        if (diag) ++diag->first_order;
        return (dy(p1) - dy(node)) / lat.dh();
    }
    if (m1 >= 0) {
        const int m2 = lat.neighbor(m1, 3);
        if (m2 >= 0) return (3.0 * dy(node) - 4.0 * dy(m1) + dy(m2)) * inv2h;
        if (diag) ++diag->first_order;
        return (dy(node) - dy(m1)) / lat.dh();
    }
    if (diag) ++diag->missing;
    return 0.0;
}

double div2d_at(const VectorField& u, const Lattice& lat, int node, FdDiagnostics* diag) {
    return ddx_at(u.x, lat, node, diag) + ddy_at(u.y, lat, node, diag);
}

double curl2d_at(const VectorField& u, const Lattice& lat, int node, FdDiagnostics* diag) {
    return ddx_at(u.y, lat, node, diag) - ddy_at(u.x, lat, node, diag);
}

ScalarField div2d(const VectorField& u, const Lattice& lat, FdDiagnostics* diag) {
    check_extents(lat);
    ScalarField out(lat);
    for (int node = 0; node < lat.node_count(); ++node) {
        if (lat.material(node)) out[node] = div2d_at(u, lat, node, diag);
    }
    return out;
}

ScalarField curl2d(const VectorField& u, const Lattice& lat, FdDiagnostics* diag) {
    check_extents(lat);
    ScalarField out(lat);
    for (int node = 0; node < lat.node_count(); ++node) {
        if (lat.material(node)) out[node] = curl2d_at(u, lat, node, diag);
    }
    return out;
}

VectorField grad_scalar(const ScalarField& s, const Lattice& lat, FdDiagnostics* diag) {
    check_extents(lat);
    VectorField out(lat);
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        out.x[node] = ddx_at(s.v, lat, node, diag);
        out.y[node] = ddy_at(s.v, lat, node, diag);
    }
    return out;
}

VectorField curl_out_of_plane(const ScalarField& s, const Lattice& lat, FdDiagnostics* diag) {
    check_extents(lat);
    VectorField out(lat);
    for (int node = 0; node < lat.node_count(); ++node) {
        if (!lat.material(node)) continue;
        out.x[node] = ddy_at(s.v, lat, node, diag);
        out.y[node] = -ddx_at(s.v, lat, node, diag);
    }
    return out;
}

SymTensor2 stress_at(const VectorField& u, const Material& mat, const Lattice& lat, int node,
                     FdDiagnostics* diag) {
    const double exx = ddx_at(u.x, lat, node, diag);
    const double eyy = ddy_at(u.y, lat, node, diag);
    const double gxy = ddy_at(u.x, lat, node, diag) + ddx_at(u.y, lat, node, diag);
    const double tr = exx + eyy;
    SymTensor2 s;
    s.xx = mat.lambda * tr + 2.0 * mat.mu * exx;
    s.yy = mat.lambda * tr + 2.0 * mat.mu * eyy;
    s.xy = mat.mu * gxy;
    return s;
}

TensorField stress(const VectorField& u, const Material& mat, const Lattice& lat,
                   FdDiagnostics* diag) {
    check_extents(lat);
    TensorField out(lat);
    for (int node = 0; node < lat.node_count(); ++node) {
        if (lat.material(node)) out.set(node, stress_at(u, mat, lat, node, diag));
    }
    return out;
}

}  // namespace pslbm
