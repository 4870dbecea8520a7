#pragma once

#include <memory>
#include <optional>
#include <string>

#include "henon/energy.hpp"

// Ground-state computation by Nehari-projected gradient descent in the H^1
// metric, the weighted first eigenpair, and solution diagnostics.

namespace henon {

enum class SolveStatus {
    converged,
    stalled,
    vanishing_escape,
    degenerate_fibering,
};

const char* to_string(SolveStatus s);

struct SolverOptions {
    double step = 1.0;       // initial trial step of each backtracking search
    int max_iter = 20000;
    double tol = 1e-8;       // exit when the H^1 gradient norm falls below
    double armijo = 1e-4;
    double escape_mass_frac = 1e-8;  // L^2-mass fraction that flags escape
    std::optional<RadialFunction> seed_profile;
    double seed_eps = 1.0;           // cutoff-bubble seed scale
};

struct GroundStateResult {
    RadialFunction u;
    double m = 0.0;          // energy at exit
    int iterations = 0;
    double grad_norm = 0.0;     // H^1 norm of the projected (tangential) gradient
    double el_residual = 0.0;   // H^1 norm of the full Riesz gradient of Phi'
    double threshold = 0.0;  // compactness threshold for the run's regime
    bool below_threshold = false;
    double pohozaev = 0.0;   // diagnostic residual of the unperturbed identity
    bool positive = false;
    double psi_residual = 0.0;      // |<Phi'(u), u>|
    double l2_mass_ratio = 1.0;     // int u^2 relative to the seed
    EnergyBreakdown breakdown;
    SolveStatus status = SolveStatus::stalled;
    std::string message;
};

GroundStateResult ground_state(const ProblemParams& params,
                               std::shared_ptr<const RadialGrid> grid,
                               const SolverOptions& opts = {});

struct EigenResult {
    double lambda1 = 0.0;
    RadialFunction phi1;   // normalized: int |x|^beta phi^2 = 1, nonnegative
    double residual = 0.0; // H^1-dual norm of A phi - lambda B phi
    int iterations = 0;
};

// First eigenvalue of <u,v>_{H^1} = lambda int |x|^beta u v, -2 < beta < 0,
// by inverse iteration on the P1 discretization.
EigenResult first_eigenpair(int n_dim, double beta,
                            std::shared_ptr<const RadialGrid> grid,
                            double tol = 1e-10, int max_iter = 2000);

// int |grad u|^2 + N/(N-2) int u^2 - int |x|^alpha |u|^{2*(alpha)}.
// Zero is necessary for solutions of the unperturbed critical equation;
// for the perturbed problem it is a diagnostic only.
double pohozaev_residual(const RadialFunction& u, int n_dim, double alpha);

// H^1 norm of the Riesz representative of Phi'(u).
double euler_lagrange_residual(const RadialFunction& u,
                               const ProblemParams& params);

}  // namespace henon
