#include "henon/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "henon/special.hpp"

namespace henon {

namespace detail {

void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w) {
    x.assign(order, 0.0);
    w.assign(order, 0.0);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-based initial guess.
        double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        x[order - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[order - 1 - i] = w[i];
    }
}

}  // namespace detail

RadialGrid::RadialGrid(double r_max, int n_cells, double grading, int cell_rule)
    : r_max_(r_max), n_cells_(n_cells), grading_(grading), cell_rule_(cell_rule) {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw std::invalid_argument("RadialGrid: requires r_max > 0");
    if (n_cells < 16)
        throw std::invalid_argument("RadialGrid: requires n_cells >= 16");
    if (!(grading >= 1.0))
        throw std::invalid_argument("RadialGrid: requires grading >= 1");
    if (cell_rule < 2 || cell_rule > 64)
        throw std::invalid_argument("RadialGrid: requires 2 <= cell_rule <= 64");

    nodes_.resize(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i)
        nodes_[i] = r_max * std::pow(static_cast<double>(i) / n_cells, grading);
    nodes_.front() = 0.0;
    nodes_.back() = r_max;

    std::vector<double> gx, gw;
    detail::gauss_legendre(cell_rule, gx, gw);
    points_.reserve(static_cast<std::size_t>(n_cells) * cell_rule);
    weights_.reserve(points_.capacity());
    for (int c = 0; c < n_cells; ++c) {
        const double a = nodes_[c], b = nodes_[c + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < cell_rule; ++q) {
            points_.push_back(mid + half * gx[q]);
            weights_.push_back(half * gw[q]);
        }
    }
}

std::shared_ptr<const RadialGrid> build_grid(double r_max, int n_cells,
                                             double grading, int cell_rule) {
    return std::make_shared<const RadialGrid>(r_max, n_cells, grading, cell_rule);
}

namespace {

void check_weight_exponent(int n_dim, double gamma_w) {
    if (n_dim < 3) throw std::domain_error("weighted_integral: requires N >= 3");
    if (!(gamma_w > -2.0))
        throw std::domain_error("weighted_integral: requires gamma > -2");
}

}  // namespace

std::vector<double> weight_vector(const RadialGrid& grid, int n_dim,
                                  double gamma_w) {
    check_weight_exponent(n_dim, gamma_w);
    const double expo = n_dim - 1 + gamma_w;
    const double omega = sphere_area(n_dim);
    std::vector<double> wv(grid.n_points());
    for (std::size_t j = 0; j < wv.size(); ++j)
        wv[j] = omega * grid.weights()[j] * std::pow(grid.points()[j], expo);
    return wv;
}

double weighted_integral(const RadialGrid& grid, int n_dim, double gamma_w,
                         const std::function<double(double)>& g) {
    check_weight_exponent(n_dim, gamma_w);
    const double expo = n_dim - 1 + gamma_w;
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
        const double r = grid.points()[j];
        const double v = g(r);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "weighted_integral: integrand not finite at r=" << r;
            throw std::runtime_error(msg.str());
        }
        sum += grid.weights()[j] * std::pow(r, expo) * v;
    }
    return sphere_area(n_dim) * sum;
}

double weighted_integral(const RadialGrid& grid, int n_dim, double gamma_w,
                         std::span<const double> g_at_points) {
    check_weight_exponent(n_dim, gamma_w);
    if (g_at_points.size() != grid.n_points())
        throw std::invalid_argument("weighted_integral: sample size mismatch");
    const double expo = n_dim - 1 + gamma_w;
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.n_points(); ++j)
        sum += grid.weights()[j] * std::pow(grid.points()[j], expo) *
               g_at_points[j];
    return sphere_area(n_dim) * sum;
}

}  // namespace henon
