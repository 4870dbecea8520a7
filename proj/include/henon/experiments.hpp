#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "henon/energy.hpp"
#include "henon/space.hpp"

// Scripted verification of the closed forms and asymptotic orders attached
// to the concentrating Gaussian sequence and the cutoff bubble family, the
// inequality audit over a standard corpus, and the lambda = 0
// threshold-escape demonstration.

namespace henon {

// Log-log regression y ~ a * eps^slope (optionally with an |ln eps| factor).
struct LogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};
LogFit fit_loglog(std::span<const double> eps, std::span<const double> vals,
                  bool log_correction);

struct FitReport {
    std::string quantity;
    std::vector<double> eps_values;   // strictly decreasing
    std::vector<double> measured;     // |deficit| or mass per eps
    double fitted_slope = 0.0;
    double expected_slope = 0.0;
    double slope_error = 0.0;
    double r_squared = 0.0;
    bool log_corrected = false;       // the |ln eps|-corrected model won
    bool log_expected = false;
    int sign = 0;                     // sign of the (last) raw deficit
};

struct NoncompactRow {
    int k = 0;
    double grad_sq = 0.0, grad_exact = 0.0;
    double l2_sq = 0.0, l2_exact = 0.0;
    double crit_moment = 0.0, crit_exact = 0.0;
    double q_moment = 0.0, q_exact = 0.0;
};

struct NoncompactReport {
    int n_dim = 0;
    double gamma_w = 0.0;
    double q = 0.0;  // the supercritical probe exponent
    std::vector<NoncompactRow> rows;
    double growth_slope_fitted = 0.0;
    double growth_slope_expected = 0.0;
    double max_rel_err_grad = 0.0;
    double max_rel_err_l2 = 0.0;
    double max_rel_err_crit = 0.0;
    double max_rel_err_q = 0.0;
};

struct GridSpec {
    double r_max = 0.0;
    int n_cells = 0;
    double grading = 1.0;
    int cell_rule = 8;
};

// Gaussian concentration table: quadrature vs closed forms, plus the
// log-log growth fit of the supercritical moment.  q defaults to
// 2*(gamma) + 1.
NoncompactReport noncompactness_report(int n_dim, double gamma_w,
                                       std::span<const int> k_list,
                                       std::optional<double> q = std::nullopt,
                                       std::optional<GridSpec> grid = std::nullopt);

// Cutoff-bubble sweep: one FitReport per tracked quantity (gradient
// deficit, primary-moment deficit, L^2 mass, perturbation mass, and the
// second-moment deficit when alpha2 is given).
std::vector<FitReport> bubble_asymptotics(int n_dim, double alpha1, double beta,
                                          double p,
                                          std::span<const double> eps_list,
                                          std::optional<double> alpha2 = std::nullopt,
                                          std::optional<GridSpec> grid = std::nullopt,
                                          int jobs = 1);

// Expected asymptotic orders (closed-form functions of the exponents).
double expected_slope_grad_deficit(int n_dim);
double expected_slope_crit_deficit(int n_dim, double alpha);
double expected_slope_l2_mass(int n_dim);
bool expected_log_l2_mass(int n_dim);
double expected_slope_perturb_mass(int n_dim, double beta, double p);
bool expected_log_perturb_mass(int n_dim, double beta, double p);

// int |x|^{a2} U_{1,a1}^{2*(a2)} over all of R^N by high-resolution,
// tail-corrected quadrature; cached per (N, a1, a2).
double second_moment_plateau(int n_dim, double alpha1, double alpha2);

// Analytic leading tails of the bubble integrals beyond radius r0.
double bubble_tail_gradient(int n_dim, double alpha, double eps, double r0);
double bubble_tail_moment(int n_dim, double alpha, double eps, double gamma_w,
                          double q, double r0);
// Radius making the (slowest) gradient tail <= rel_tol of its total.
double bubble_certified_radius(int n_dim, double alpha, double eps,
                               double rel_tol);

// Rayleigh quotient of the extremal profile with tail-corrected integrals.
double bubble_rayleigh_quotient(int n_dim, double alpha, double eps,
                                std::optional<GridSpec> grid = std::nullopt);

struct CorpusEntry {
    std::string name;
    RadialFunction u;
    bool bubble_tail = false;  // apply analytic tail corrections
    double eps = 0.0;          // bubble scale when bubble_tail is set
};

std::vector<CorpusEntry> standard_corpus(std::shared_ptr<const RadialGrid> grid,
                                         int n_dim, double alpha1,
                                         unsigned seed = 20240901u);

struct AuditEntry {
    std::string function;
    std::string inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;     // rhs - lhs (>= 0 when the inequality holds)
    bool violated = false;
};

struct AuditReport {
    std::vector<AuditEntry> entries;
    int violations = 0;
    double min_rel_slack = 0.0;
    double rel_tol = 0.0;
};

AuditReport inequality_audit(const std::vector<CorpusEntry>& corpus,
                             const ProblemParams& params,
                             double rel_tol = 1e-6);

struct EscapeRow {
    double eps = 0.0;
    double fibering_max = 0.0;
    double threshold = 0.0;
    double gap = 0.0;            // fibering_max - threshold
    double l2_mass = 0.0;        // of the projected profile
    double mass_fraction = 0.0;  // l2_mass / ||t_eps u_eps||^2
};

// lambda = 0 sweep along the cutoff-bubble family: the fibering maxima
// approach the single-critical threshold while the L^2-mass fraction of the
// projected profiles vanishes.
std::vector<EscapeRow> threshold_escape_demo(int n_dim, double alpha,
                                             std::span<const double> eps_list,
                                             std::optional<GridSpec> grid = std::nullopt);

}  // namespace henon
