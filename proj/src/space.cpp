#include "henon/space.hpp"

#include <cmath>
#include <stdexcept>

#include "henon/fem.hpp"
#include "henon/special.hpp"

namespace henon {

namespace {

void require_same_grid(const RadialFunction& u, const RadialFunction& v) {
    if (u.grid.get() != v.grid.get())
        throw std::invalid_argument("radial functions live on different grids");
}

}  // namespace

RadialFunction sample_profile(std::shared_ptr<const RadialGrid> grid,
                              const std::function<double(double)>& f,
                              const std::function<double(double)>& dfdr) {
    RadialFunction u;
    u.grid = std::move(grid);
    const auto& pts = u.grid->points();
    u.values.resize(pts.size());
    u.derivs.resize(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        u.values[j] = f(pts[j]);
        u.derivs[j] = dfdr(pts[j]);
        if (!std::isfinite(u.values[j]) || !std::isfinite(u.derivs[j]))
            throw std::runtime_error("sample_profile: non-finite sample");
    }
    const auto& nd = u.grid->nodes();
    u.node_values.resize(nd.size());
    for (std::size_t i = 0; i < nd.size(); ++i) u.node_values[i] = f(nd[i]);
    return u;
}

RadialFunction from_node_values(std::shared_ptr<const RadialGrid> grid,
                                std::vector<double> nodal) {
    RadialFunction u;
    u.grid = std::move(grid);
    u.values = fem::values_at_points(*u.grid, nodal);
    u.derivs = fem::derivs_at_points(*u.grid, nodal);
    u.node_values = std::move(nodal);
    u.fem = true;
    return u;
}

RadialFunction zero_function(std::shared_ptr<const RadialGrid> grid) {
    const std::size_t n = grid->n_cells() + 1;
    return from_node_values(std::move(grid), std::vector<double>(n, 0.0));
}

RadialFunction axpy(double a, const RadialFunction& u, double b,
                    const RadialFunction& v) {
    require_same_grid(u, v);
    if (!u.fem || !v.fem)
        throw std::invalid_argument("axpy: requires P1 functions");
    std::vector<double> nodal(u.node_values.size());
    for (std::size_t i = 0; i < nodal.size(); ++i)
        nodal[i] = a * u.node_values[i] + b * v.node_values[i];
    return from_node_values(u.grid, std::move(nodal));
}

RadialFunction scaled(const RadialFunction& u, double factor) {
    RadialFunction out = u;
    for (auto& x : out.values) x *= factor;
    for (auto& x : out.derivs) x *= factor;
    for (auto& x : out.node_values) x *= factor;
    return out;
}

RadialFunction absolute(const RadialFunction& u) {
    if (u.fem) {
        std::vector<double> nodal(u.node_values.size());
        for (std::size_t i = 0; i < nodal.size(); ++i)
            nodal[i] = std::abs(u.node_values[i]);
        return from_node_values(u.grid, std::move(nodal));
    }
    RadialFunction out = u;
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        if (out.values[j] < 0.0) {
            out.values[j] = -out.values[j];
            out.derivs[j] = -out.derivs[j];
        }
    }
    for (auto& x : out.node_values) x = std::abs(x);
    return out;
}

double d12_seminorm_sq(const RadialFunction& u, int n_dim) {
    std::vector<double> g2(u.n_points());
    for (std::size_t j = 0; j < g2.size(); ++j) g2[j] = u.derivs[j] * u.derivs[j];
    return weighted_integral(*u.grid, n_dim, 0.0, g2);
}

double l2_norm_sq(const RadialFunction& u, int n_dim) {
    std::vector<double> v2(u.n_points());
    for (std::size_t j = 0; j < v2.size(); ++j) v2[j] = u.values[j] * u.values[j];
    return weighted_integral(*u.grid, n_dim, 0.0, v2);
}

double h1_norm_sq(const RadialFunction& u, int n_dim) {
    return d12_seminorm_sq(u, n_dim) + l2_norm_sq(u, n_dim);
}

double weighted_lp(const RadialFunction& u, int n_dim, double gamma_w, double q) {
    if (q < 1.0) throw std::domain_error("weighted_lp: requires q >= 1");
    std::vector<double> vq(u.n_points());
    for (std::size_t j = 0; j < vq.size(); ++j)
        vq[j] = std::pow(std::abs(u.values[j]), q);
    return weighted_integral(*u.grid, n_dim, gamma_w, vq);
}

double bubble_value(int n_dim, double alpha, double eps, double r) {
    const double ta = 2.0 + alpha;
    const double expo = (n_dim - 2) / ta;
    return bubble_coefficient(n_dim, alpha) * std::pow(eps, 0.5 * (n_dim - 2)) /
           std::pow(std::pow(eps, ta) + std::pow(r, ta), expo);
}

double bubble_deriv(int n_dim, double alpha, double eps, double r) {
    const double ta = 2.0 + alpha;
    const double expo = (n_dim - 2) / ta;
    const double denom = std::pow(eps, ta) + std::pow(r, ta);
    return bubble_coefficient(n_dim, alpha) * std::pow(eps, 0.5 * (n_dim - 2)) *
           (-(n_dim - 2.0)) * std::pow(r, ta - 1.0) *
           std::pow(denom, -expo - 1.0);
}

namespace {

// q(s) = exp(-1/s) for s > 0, else 0; the C^infty transition kernel.
double mollifier(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double mollifier_deriv(double s) {
    return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0;
}

}  // namespace

double cutoff_value(double r_inner, double r) {
    if (r <= r_inner) return 1.0;
    if (r >= 2.0 * r_inner) return 0.0;
    const double a = mollifier((2.0 * r_inner - r) / r_inner);
    const double b = mollifier((r - r_inner) / r_inner);
    return a / (a + b);
}

double cutoff_deriv(double r_inner, double r) {
    if (r <= r_inner || r >= 2.0 * r_inner) return 0.0;
    const double a = mollifier((2.0 * r_inner - r) / r_inner);
    const double b = mollifier((r - r_inner) / r_inner);
    const double da = -mollifier_deriv((2.0 * r_inner - r) / r_inner) / r_inner;
    const double db = mollifier_deriv((r - r_inner) / r_inner) / r_inner;
    return (da * b - a * db) / ((a + b) * (a + b));
}

double gaussian_value(int n_dim, double gamma_w, int k, double r) {
    const double q = upper_critical(n_dim, gamma_w);
    return std::pow(static_cast<double>(k), 0.25 * (n_dim - 2)) *
           std::exp(-k * r * r / (2.0 * q));
}

double gaussian_deriv(int n_dim, double gamma_w, int k, double r) {
    const double q = upper_critical(n_dim, gamma_w);
    return gaussian_value(n_dim, gamma_w, k, r) * (-k * r / q);
}

RadialFunction bubble(std::shared_ptr<const RadialGrid> grid, int n_dim,
                      double alpha, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("bubble: requires eps > 0");
    return sample_profile(
        std::move(grid),
        [=](double r) { return bubble_value(n_dim, alpha, eps, r); },
        [=](double r) { return bubble_deriv(n_dim, alpha, eps, r); });
}

RadialFunction cutoff_bubble(std::shared_ptr<const RadialGrid> grid, int n_dim,
                             double alpha, double eps, double r_inner) {
    if (!(eps > 0.0)) throw std::domain_error("cutoff_bubble: requires eps > 0");
    if (!(r_inner > 0.0) || 2.0 * r_inner > grid->r_max())
        throw std::domain_error("cutoff_bubble: requires 0 < 2R <= r_max");
    return sample_profile(
        std::move(grid),
        [=](double r) {
            return cutoff_value(r_inner, r) * bubble_value(n_dim, alpha, eps, r);
        },
        [=](double r) {
            return cutoff_deriv(r_inner, r) * bubble_value(n_dim, alpha, eps, r) +
                   cutoff_value(r_inner, r) * bubble_deriv(n_dim, alpha, eps, r);
        });
}

RadialFunction gaussian_seq(std::shared_ptr<const RadialGrid> grid, int n_dim,
                            double gamma_w, int k) {
    if (k < 1) throw std::domain_error("gaussian_seq: requires k >= 1");
    if (gamma_w < -2.0) throw std::domain_error("gaussian_seq: requires gamma >= -2");
    return sample_profile(
        std::move(grid),
        [=](double r) { return gaussian_value(n_dim, gamma_w, k, r); },
        [=](double r) { return gaussian_deriv(n_dim, gamma_w, k, r); });
}

struct H1Operator::Impl {
    fem::TridiagFactor factor;
    explicit Impl(const RadialGrid& grid, int n_dim)
        : factor(fem::h1_matrix(grid, n_dim)) {}
};

H1Operator::H1Operator(std::shared_ptr<const RadialGrid> grid, int n_dim)
    : grid_(std::move(grid)), n_dim_(n_dim),
      impl_(std::make_shared<const Impl>(*grid_, n_dim)) {}

RadialFunction H1Operator::riesz(std::span<const double> action_on_basis) const {
    if (action_on_basis.size() != static_cast<std::size_t>(grid_->n_cells()))
        throw std::invalid_argument("riesz: action size mismatch");
    std::vector<double> nodal = impl_->factor.solve(action_on_basis);
    nodal.push_back(0.0);  // zero trace at r_max
    return from_node_values(grid_, std::move(nodal));
}

double H1Operator::pairing(std::span<const double> action_on_basis,
                           std::span<const double> nodal) const {
    const std::size_t n = grid_->n_cells();
    if (action_on_basis.size() != n || nodal.size() < n)
        throw std::invalid_argument("pairing: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += action_on_basis[i] * nodal[i];
    return s;
}

RadialFunction riesz_gradient(std::shared_ptr<const RadialGrid> grid, int n_dim,
                              std::span<const double> action_on_basis) {
    return H1Operator(std::move(grid), n_dim).riesz(action_on_basis);
}

}  // namespace henon
