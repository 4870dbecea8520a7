#pragma once

#include <span>
#include <vector>

#include "henon/grid.hpp"

// Piecewise-linear (P1) machinery on a RadialGrid: weighted stiffness and
// mass matrices, interpolation to quadrature points, and the symmetric
// tridiagonal solver used for Riesz representatives and inverse iteration.
// Degrees of freedom are the mesh nodes 0..n-1; the value at r_max is
// pinned to zero.

namespace henon::fem {

// Symmetric tridiagonal matrix: diag[i], off[i] couples i and i+1.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
    std::vector<double> apply(std::span<const double> x) const;
};

// LDL^T factorization of a symmetric positive definite tridiagonal matrix.
class TridiagFactor {
  public:
    explicit TridiagFactor(const Tridiag& m);
    std::vector<double> solve(std::span<const double> rhs) const;
    std::size_t size() const { return d_.size(); }

  private:
    std::vector<double> d_;
    std::vector<double> l_;
};

// H^1 matrix (stiffness + mass, weight r^{N-1}, omega_N included) on the
// zero-trace P1 space.
Tridiag h1_matrix(const RadialGrid& grid, int n_dim);

// Weighted mass matrix with weight r^{N-1+gamma}.
Tridiag weighted_mass_matrix(const RadialGrid& grid, int n_dim, double gamma_w);

// Interpolate nodal values (size n_cells+1) to the quadrature points.
std::vector<double> values_at_points(const RadialGrid& grid,
                                     std::span<const double> nodal);
// Derivative of the interpolant (piecewise constant per cell) at the points.
std::vector<double> derivs_at_points(const RadialGrid& grid,
                                     std::span<const double> nodal);

// Accumulate int [ f_grad phi_i' + f_val phi_i ] r^{N-1} omega_N dr for all
// interior basis functions, where f_val/f_grad are sampled at the
// quadrature points.  Returns a vector of size n_cells (trace dof dropped).
std::vector<double> basis_action(const RadialGrid& grid, int n_dim,
                                 std::span<const double> f_val,
                                 std::span<const double> f_grad);

}  // namespace henon::fem
