#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "henon/space.hpp"

// The energy functional
//   Phi(u) = 1/2 ||u||^2 - kappa/2*(a1) int |x|^{a1}|u|^{2*(a1)}
//            - mu/2*(a2) int |x|^{a2}|u|^{2*(a2)} - lambda/p int |x|^beta |u|^p
// together with its derivative action, the Nehari constraint Psi(u) =
// <Phi'(u), u>, and the fibering map t -> Phi(t u) with its maximizer t_u.

namespace henon {

// Raised when the fibering map t -> Phi(tu) has no positive maximizer on
// the search bracket (e.g. p = 2 with lambda >= lambda_{1,beta}).
class FiberingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ProblemParams {
    int n_dim = 3;
    double alpha1 = 1.0;
    std::optional<double> alpha2;
    double beta = 0.0;
    double p = 4.0;
    double lambda = 1.0;
    std::optional<double> mu;
    // Coefficient of the primary critical term; 0 disables it for
    // subcritical benchmark runs.
    double critical_coeff = 1.0;

    // Throws std::invalid_argument naming the violated inequality.
    void validate() const;
    // p = 2 with negative beta needs lambda < lambda_{1,beta} for a
    // coercive fibering map; the check itself requires the eigenvalue and
    // is run by the solver.
    bool coercivity_sensitive() const { return p == 2.0 && beta < 0.0; }
};

struct EnergyBreakdown {
    double a = 0.0;    // ||u||^2
    double b = 0.0;    // int |x|^{a1} |u|^{2*(a1)}
    double c = 0.0;    // int |x|^{a2} |u|^{2*(a2)} (0 if no second weight)
    double d = 0.0;    // int |x|^beta |u|^p
    double phi = 0.0;  // total energy
    double nehari_residual = 0.0;  // <Phi'(u), u>
};

// Binds a grid and parameter set; precomputes the quadrature weight tables
// and the H^1 operator so repeated evaluations touch no pow() on weights.
class EnergyModel {
  public:
    EnergyModel(std::shared_ptr<const RadialGrid> grid, ProblemParams params);

    const ProblemParams& params() const { return params_; }
    const std::shared_ptr<const RadialGrid>& grid() const { return grid_; }
    const H1Operator& h1() const { return h1_; }

    struct Terms {
        double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    };
    Terms terms(const RadialFunction& u) const;

    double phi_of(const Terms& t, double scale = 1.0) const;
    double psi_of(const Terms& t, double scale = 1.0) const;

    EnergyBreakdown energy(const RadialFunction& u) const;
    double derivative_action(const RadialFunction& u,
                             const RadialFunction& v) const;
    double nehari_value(const RadialFunction& u) const;
    // Unique fibering maximizer t_u with Psi(t_u u) = 0; throws
    // FiberingError when degenerate.
    double nehari_scale(const RadialFunction& u) const;
    double nehari_scale_from_terms(const Terms& t) const;
    double nehari_regularity(const RadialFunction& u) const;
    double fibering_max(const RadialFunction& u) const;

    // <Phi'(u), phi_i> over the zero-trace P1 basis.
    std::vector<double> residual_on_basis(const RadialFunction& u) const;
    // <Psi'(u), phi_i> over the same basis (normal direction of the manifold).
    std::vector<double> constraint_gradient_on_basis(const RadialFunction& u) const;
    RadialFunction riesz_gradient_of(const RadialFunction& u) const;

    double upper1() const { return q1_; }
    double upper2() const { return q2_; }

  private:
    bool coercivity_hint() const;

    std::shared_ptr<const RadialGrid> grid_;
    ProblemParams params_;
    double q1_;                 // 2*(alpha1)
    double q2_ = 0.0;           // 2*(alpha2) if present
    std::vector<double> w0_;    // omega r^{N-1} weights
    std::vector<double> wa1_;   // omega r^{N-1+alpha1}
    std::vector<double> wa2_;
    std::vector<double> wb_;    // omega r^{N-1+beta}
    H1Operator h1_;
};

// One-shot convenience wrappers.
EnergyBreakdown energy(const RadialFunction& u, const ProblemParams& params);
double derivative_action(const RadialFunction& u, const RadialFunction& v,
                         const ProblemParams& params);
double nehari_value(const RadialFunction& u, const ProblemParams& params);
double nehari_scale(const RadialFunction& u, const ProblemParams& params);
double nehari_regularity(const RadialFunction& u, const ProblemParams& params);
double fibering_max(const RadialFunction& u, const ProblemParams& params);

}  // namespace henon
