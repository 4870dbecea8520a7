#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

// Truncated radial meshes with per-cell Gauss-Legendre quadrature for
// weighted volume integrals
//   int_{R^N} |x|^gamma g(|x|) dx = omega_N int_0^{r_max} r^{N-1+gamma} g(r) dr.

namespace henon {

class RadialGrid {
  public:
    RadialGrid(double r_max, int n_cells, double grading, int cell_rule);

    double r_max() const { return r_max_; }
    int n_cells() const { return n_cells_; }
    double grading() const { return grading_; }
    int cell_rule() const { return cell_rule_; }

    // Cell boundaries r_i = r_max (i/n)^grading, i = 0..n.
    const std::vector<double>& nodes() const { return nodes_; }

    // Quadrature points (ascending) and their dr-weights, cell_rule per cell.
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t n_points() const { return points_.size(); }
    int cell_of(std::size_t point_index) const {
        return static_cast<int>(point_index) / cell_rule_;
    }

  private:
    double r_max_;
    int n_cells_;
    double grading_;
    int cell_rule_;
    std::vector<double> nodes_;
    std::vector<double> points_;
    std::vector<double> weights_;
};

std::shared_ptr<const RadialGrid> build_grid(double r_max, int n_cells,
                                             double grading = 1.0,
                                             int cell_rule = 8);

// omega_N * sum_j w_j r_j^{N-1+gamma} g(r_j).  gamma > -2.  The callable
// overload checks each evaluation and reports the offending radius if g is
// not finite there.
double weighted_integral(const RadialGrid& grid, int n_dim, double gamma_w,
                         const std::function<double(double)>& g);
double weighted_integral(const RadialGrid& grid, int n_dim, double gamma_w,
                         std::span<const double> g_at_points);

// r^{N-1+gamma}-weighted dr-weights including the omega_N factor; the
// integral against sampled values is then a plain dot product.
std::vector<double> weight_vector(const RadialGrid& grid, int n_dim,
                                  double gamma_w);

namespace detail {
// Gauss-Legendre rule of the given order on [-1, 1].
void gauss_legendre(int order, std::vector<double>& x, std::vector<double>& w);
}  // namespace detail

}  // namespace henon
