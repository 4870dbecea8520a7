#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "henon/grid.hpp"

// Discrete radial profiles and the explicit families (extremal bubble,
// cutoff bubble, concentrating Gaussians) together with their norms and the
// Riesz representative of H^1 functionals.

namespace henon {

struct RadialFunction {
    std::shared_ptr<const RadialGrid> grid;
    std::vector<double> node_values;  // n_cells + 1
    std::vector<double> values;       // at quadrature points
    std::vector<double> derivs;       // at quadrature points
    bool fem = false;                 // true: P1 interpolant of node_values

    std::size_t n_points() const { return values.size(); }
};

// Sample an analytic profile (with exact derivative) on the grid.
RadialFunction sample_profile(std::shared_ptr<const RadialGrid> grid,
                              const std::function<double(double)>& f,
                              const std::function<double(double)>& dfdr);

// P1 function from nodal values (value at r_max is kept as given).
RadialFunction from_node_values(std::shared_ptr<const RadialGrid> grid,
                                std::vector<double> nodal);

RadialFunction zero_function(std::shared_ptr<const RadialGrid> grid);

// a*u + b*v on a shared grid (P1 only).
RadialFunction axpy(double a, const RadialFunction& u, double b,
                    const RadialFunction& v);
RadialFunction scaled(const RadialFunction& u, double factor);
// |u|: exact for quadrature samples; nodal values are replaced by their
// absolute values for P1 functions.
RadialFunction absolute(const RadialFunction& u);

double h1_norm_sq(const RadialFunction& u, int n_dim);
double d12_seminorm_sq(const RadialFunction& u, int n_dim);
double l2_norm_sq(const RadialFunction& u, int n_dim);

// int |x|^gamma |u|^q dx.
double weighted_lp(const RadialFunction& u, int n_dim, double gamma_w, double q);

// Scalar evaluators of the explicit families.
double bubble_value(int n_dim, double alpha, double eps, double r);
double bubble_deriv(int n_dim, double alpha, double eps, double r);
double cutoff_value(double r_inner, double r);   // 1 inside r_inner, 0 beyond 2 r_inner
double cutoff_deriv(double r_inner, double r);
double gaussian_value(int n_dim, double gamma_w, int k, double r);
double gaussian_deriv(int n_dim, double gamma_w, int k, double r);

// Extremal profile U_{eps,alpha}(r) = C(alpha,N) eps^{(N-2)/2}
//   / (eps^{2+alpha} + r^{2+alpha})^{(N-2)/(2+alpha)}.
RadialFunction bubble(std::shared_ptr<const RadialGrid> grid, int n_dim,
                      double alpha, double eps);

// Smooth cutoff of the bubble: identical to it for r <= r_inner, zero for
// r >= 2 r_inner; requires 2 r_inner <= r_max.
RadialFunction cutoff_bubble(std::shared_ptr<const RadialGrid> grid, int n_dim,
                             double alpha, double eps, double r_inner);

// Concentrating sequence u_k(r) = k^{(N-2)/4} exp(-k r^2 / (2 * 2*(gamma))).
RadialFunction gaussian_seq(std::shared_ptr<const RadialGrid> grid, int n_dim,
                            double gamma_w, int k);

// Riesz representative: the P1 function g with <g, v>_{H^1} = action(v) for
// every zero-trace P1 test function v; action is sampled on the nodal basis
// (size n_cells).
RadialFunction riesz_gradient(std::shared_ptr<const RadialGrid> grid, int n_dim,
                              std::span<const double> action_on_basis);

// Caches the H^1 operator factorization for repeated Riesz solves.
class H1Operator {
  public:
    H1Operator(std::shared_ptr<const RadialGrid> grid, int n_dim);
    RadialFunction riesz(std::span<const double> action_on_basis) const;
    // <u, v>_{H^1} for P1 u given its nodal coefficients and an action vector.
    double pairing(std::span<const double> action_on_basis,
                   std::span<const double> nodal) const;
    int n_dim() const { return n_dim_; }

  private:
    std::shared_ptr<const RadialGrid> grid_;
    int n_dim_;
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace henon
