#include "henon/fem.hpp"

#include <cmath>
#include <stdexcept>

#include "henon/special.hpp"

namespace henon::fem {

std::vector<double> Tridiag::apply(std::span<const double> x) const {
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("Tridiag::apply: size mismatch");
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = diag[i] * x[i];
        if (i > 0) y[i] += off[i - 1] * x[i - 1];
        if (i + 1 < n) y[i] += off[i] * x[i + 1];
    }
    return y;
}

TridiagFactor::TridiagFactor(const Tridiag& m) : d_(m.diag), l_(m.size(), 0.0) {
    const std::size_t n = m.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (d_[i - 1] <= 0.0)
            throw std::runtime_error("TridiagFactor: matrix not positive definite");
        l_[i - 1] = m.off[i - 1] / d_[i - 1];
        d_[i] -= l_[i - 1] * m.off[i - 1];
    }
    if (n > 0 && d_[n - 1] <= 0.0)
        throw std::runtime_error("TridiagFactor: matrix not positive definite");
}

std::vector<double> TridiagFactor::solve(std::span<const double> rhs) const {
    const std::size_t n = size();
    if (rhs.size() != n) throw std::invalid_argument("TridiagFactor: size mismatch");
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t i = 1; i < n; ++i) x[i] -= l_[i - 1] * x[i - 1];
    for (std::size_t i = 0; i < n; ++i) x[i] /= d_[i];
    for (std::size_t i = n - 1; i > 0; --i) x[i - 1] -= l_[i - 1] * x[i];
    return x;
}

namespace {

// Assemble int w(r) (c_stiff phi_i' phi_j' + c_mass phi_i phi_j) dr with
// w = omega_N r^{N-1+gamma} by the grid's own quadrature, then drop the
// trace dof at r_max.
Tridiag assemble(const RadialGrid& grid, int n_dim, double gamma_w,
                 bool with_stiffness, bool with_mass) {
    const int n = grid.n_cells();
    const int rule = grid.cell_rule();
    const double expo = n_dim - 1 + gamma_w;
    const double omega = sphere_area(n_dim);
    std::vector<double> dfull(n + 1, 0.0), ofull(n, 0.0);
    for (int c = 0; c < n; ++c) {
        const double a = grid.nodes()[c], b = grid.nodes()[c + 1];
        const double h = b - a;
        double m00 = 0.0, m01 = 0.0, m11 = 0.0, k = 0.0;
        for (int q = 0; q < rule; ++q) {
            const std::size_t j = static_cast<std::size_t>(c) * rule + q;
            const double r = grid.points()[j];
            const double w = omega * grid.weights()[j] * std::pow(r, expo);
            const double s1 = (r - a) / h;
            const double s0 = 1.0 - s1;
            if (with_mass) {
                m00 += w * s0 * s0;
                m01 += w * s0 * s1;
                m11 += w * s1 * s1;
            }
            if (with_stiffness) k += w / (h * h);
        }
        dfull[c] += m00 + k;
        dfull[c + 1] += m11 + k;
        ofull[c] += m01 - k;
    }
    Tridiag out;
    out.diag.assign(dfull.begin(), dfull.end() - 1);
    out.off.assign(ofull.begin(), ofull.end() - 1);
    return out;
}

}  // namespace

Tridiag h1_matrix(const RadialGrid& grid, int n_dim) {
    return assemble(grid, n_dim, 0.0, true, true);
}

Tridiag weighted_mass_matrix(const RadialGrid& grid, int n_dim, double gamma_w) {
    return assemble(grid, n_dim, gamma_w, false, true);
}

std::vector<double> values_at_points(const RadialGrid& grid,
                                     std::span<const double> nodal) {
    if (nodal.size() != static_cast<std::size_t>(grid.n_cells()) + 1)
        throw std::invalid_argument("values_at_points: nodal size mismatch");
    const int rule = grid.cell_rule();
    std::vector<double> v(grid.n_points());
    for (int c = 0; c < grid.n_cells(); ++c) {
        const double a = grid.nodes()[c], b = grid.nodes()[c + 1];
        const double h = b - a;
        for (int q = 0; q < rule; ++q) {
            const std::size_t j = static_cast<std::size_t>(c) * rule + q;
            const double s = (grid.points()[j] - a) / h;
            v[j] = (1.0 - s) * nodal[c] + s * nodal[c + 1];
        }
    }
    return v;
}

std::vector<double> derivs_at_points(const RadialGrid& grid,
                                     std::span<const double> nodal) {
    if (nodal.size() != static_cast<std::size_t>(grid.n_cells()) + 1)
        throw std::invalid_argument("derivs_at_points: nodal size mismatch");
    const int rule = grid.cell_rule();
    std::vector<double> v(grid.n_points());
    for (int c = 0; c < grid.n_cells(); ++c) {
        const double h = grid.nodes()[c + 1] - grid.nodes()[c];
        const double slope = (nodal[c + 1] - nodal[c]) / h;
        for (int q = 0; q < rule; ++q)
            v[static_cast<std::size_t>(c) * rule + q] = slope;
    }
    return v;
}

std::vector<double> basis_action(const RadialGrid& grid, int n_dim,
                                 std::span<const double> f_val,
                                 std::span<const double> f_grad) {
    if (f_val.size() != grid.n_points() || f_grad.size() != grid.n_points())
        throw std::invalid_argument("basis_action: sample size mismatch");
    const int n = grid.n_cells();
    const int rule = grid.cell_rule();
    const double omega = sphere_area(n_dim);
    const double expo = n_dim - 1.0;
    std::vector<double> full(n + 1, 0.0);
    for (int c = 0; c < n; ++c) {
        const double a = grid.nodes()[c], b = grid.nodes()[c + 1];
        const double h = b - a;
        for (int q = 0; q < rule; ++q) {
            const std::size_t j = static_cast<std::size_t>(c) * rule + q;
            const double r = grid.points()[j];
            const double w = omega * grid.weights()[j] * std::pow(r, expo);
            const double s1 = (r - a) / h;
            const double s0 = 1.0 - s1;
            full[c] += w * (f_val[j] * s0 - f_grad[j] / h);
            full[c + 1] += w * (f_val[j] * s1 + f_grad[j] / h);
        }
    }
    full.pop_back();
    return full;
}

}  // namespace henon::fem
