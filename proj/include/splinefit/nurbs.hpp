#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "splinefit/geometry.hpp"

namespace splinefit {

// Knot values for one parametric direction, nondecreasing in [0, 1].
// For a clamped vector of degree p the first and last p+1 values are 0 and 1.
struct KnotVector {
    std::vector<double> values;
};

// Polynomial degrees of a tensor-product surface: p along u, q along v.
struct SurfaceDegrees {
    int p = 3;
    int q = 2;
};

// Rectangular control net. Row index i runs across the width (v direction),
// column index j along the length (u direction). Weights are per point.
struct ControlGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Vec3> points;     // row-major, size rows * cols
    std::vector<double> weights;  // same layout, all > 0

    Vec3& at(std::size_t i, std::size_t j) { return points[i * cols + j]; }
    const Vec3& at(std::size_t i, std::size_t j) const { return points[i * cols + j]; }
    double& weight(std::size_t i, std::size_t j) { return weights[i * cols + j]; }
    double weight(std::size_t i, std::size_t j) const { return weights[i * cols + j]; }
};

ControlGrid make_control_grid(std::size_t rows, std::size_t cols);

// Rational tensor-product surface on [0,1]^2.
//   S(u,v) = sum_ij N_j,p(u) M_i,q(v) w_ij P_ij / sum_ij N_j,p(u) M_i,q(v) w_ij
// knots_u has cols + p + 1 values, knots_v has rows + q + 1.
struct NurbsSurface {
    ControlGrid grid;
    KnotVector knots_u;
    KnotVector knots_v;
    SurfaceDegrees degrees;
};

// Throws std::invalid_argument when sizes, degrees, knots, or weights are
// inconsistent with the surface contract above.
void validate_surface(const NurbsSurface& surface);

// Clamped uniform knot vector: degree+1 zeros, evenly spaced interior values
// i/(n_ctrl-degree), degree+1 ones. Requires n_ctrl >= degree + 1.
KnotVector clamped_uniform_knots(std::size_t n_ctrl, int degree);

// All n_ctrl basis values N_i,degree(u) by the Cox-de Boor recursion with the
// 0/0 -> 0 convention. The domain end is closed: at u = 1 the last basis
// function equals 1. Requires u in [0, 1]; throws std::domain_error outside.
std::vector<double> basis_functions(const KnotVector& knots, int degree, double u);

// Rows 0..n_derivs of basis derivatives: row d holds d-th derivatives of all
// basis functions at u. Row 0 matches basis_functions.
std::vector<std::vector<double>> basis_derivatives(const KnotVector& knots, int degree,
                                                   double u, int n_derivs);

Vec3 evaluate_surface(const NurbsSurface& surface, double u, double v);

// Regular parameter lattice, n_u x n_v samples including both ends, flattened
// with v varying fastest: sample k = iu * n_v + iv.
struct SampleGrid {
    std::size_t n_u = 0;
    std::size_t n_v = 0;
    std::vector<std::array<double, 2>> params;  // (u, v)
    std::vector<Vec3> positions;
};

SampleGrid evaluate_grid(const NurbsSurface& surface, std::size_t n_u, std::size_t n_v);

// d S(u,v) / d P_ij: one scalar per control point (the same scalar applies to
// x, y and z). Entries sum to 1 and are zero outside the active spans.
std::vector<double> control_point_jacobian(const NurbsSurface& surface, double u, double v);

struct SecondDerivatives {
    Vec3 d2_du2;
    Vec3 d2_dudv;
};

// Analytic second parametric derivatives of the rational surface. Parameters
// are clamped to [eps, 1-eps] (eps = 1e-9) so domain ends take the one-sided
// limit.
SecondDerivatives second_derivatives(const NurbsSurface& surface, double u, double v);

// Per-control-point scalars of the second derivatives: S_uu = sum d2u[ij] P_ij
// and S_uv = sum dudv[ij] P_ij with the same layout as the control grid.
// Parameters are clamped exactly as in second_derivatives.
struct SecondDerivativeJacobian {
    std::vector<double> d2u;
    std::vector<double> dudv;
};

SecondDerivativeJacobian second_derivative_jacobian(const NurbsSurface& surface,
                                                    double u, double v);

}  // namespace splinefit
