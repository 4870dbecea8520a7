#pragma once

#include <optional>

// Closed-form special functions, critical exponents, best embedding
// constants and compactness thresholds for the weighted radial problems
// handled by this library.

namespace henon {

// Critical exponent pair for the weighted embedding H^1_r -> L^q(|x|^gamma).
// upper = 2(N+gamma)/(N-2); lower = 2 for -2 <= gamma <= 0 and
// 2(N-1+gamma)/(N-1) for gamma > 0.
struct ExponentPair {
    double upper = 0.0;
    double lower = 0.0;
};

// All desk-scale constants for one parameter set.  m_tilde and
// threshold_double are only present for two-weight (double critical) runs.
struct ConstantsReport {
    int n_dim = 0;
    double alpha = 0.0;
    std::optional<double> alpha2;
    double omega_n = 0.0;            // surface area of the unit sphere in R^N
    double s_alpha = 0.0;            // best constant of the weighted Sobolev inequality
    double c_alpha_n = 0.0;          // amplitude coefficient of the extremal bubble
    double threshold_single = 0.0;   // compactness threshold for one critical term
    std::optional<double> m_tilde;
    std::optional<double> threshold_double;
};

// Gamma function, 9-term Lanczos rational approximation (g = 7) evaluated
// in long double.  Relative error <= 1e-12 on (0, 170].  Throws
// std::domain_error for non-finite or non-positive x.
double gamma_fn(double x);

// log Gamma on x > 0; same approximation in log form, safe for large x.
double lgamma_fn(double x);

// omega_N = 2 pi^{N/2} / Gamma(N/2), N >= 3.
double sphere_area(int n_dim);

// 2*(gamma) = 2(N+gamma)/(N-2), gamma >= -2.
double upper_critical(int n_dim, double gamma_w);

// Piecewise lower exponent, gamma >= -2.
double lower_critical(int n_dim, double gamma_w);

ExponentPair crit_exponents(int n_dim, double gamma_w);

// Best constant S_alpha of
//   int |grad u|^2 >= S_alpha (int |x|^alpha |u|^{2*(alpha)})^{2/2*(alpha)}
// over radial functions, alpha > -2:
//   S_alpha = (N+alpha)(N-2) [ omega_N/(2+alpha)
//             * Gamma^2((N+alpha)/(2+alpha)) / Gamma(2(N+alpha)/(2+alpha)) ]^{(2+alpha)/(N+alpha)}.
double best_constant(int n_dim, double alpha);

// The alpha = 0 constant computed from the independent closed form
// pi N (N-2) (Gamma(N/2)/Gamma(N))^{2/N}; cross-check route for
// best_constant(N, 0).
double sobolev_constant(int n_dim);

// Bubble amplitude C(alpha,N) = [(N+alpha)(N-2)]^{(N-2)/(4+2alpha)}.
double bubble_coefficient(int n_dim, double alpha);

// Energy level below which bounded minimizing sequences are compact for a
// single critical term: (2+alpha)/(2(N+alpha)) * S_alpha^{(N+alpha)/(2+alpha)}.
double ps_threshold_single(int n_dim, double alpha);

// Constant of the two-weight moment comparison
//   int |x|^hi |u|^{2*(hi)} <= C * ||grad u||^{2*(hi)-2*(lo)} int |x|^lo |u|^{2*(lo)},
// C = [(N-2) omega_N]^{(lo-hi)/(N-2)}, hi > lo > -2.
double weight_comparison_constant(int n_dim, double sigma_hi, double sigma_lo);

// Constant of the pointwise radial decay bound
//   |u(r)| <= C r^{-(N-2)/2} ||grad u||_{L^2},  C = [(N-2) omega_N]^{-1/2}.
double radial_decay_constant(int n_dim);

// Unique positive root of
//   C t^{(2*(a1)-2)/2} + t^{(2*(a2)-2)/2} - S_{a2}^{2*(a2)/2} = 0
// with C = weight_comparison_constant(N, a1, a2); requires a1 > a2 > -2.
// The left side is strictly increasing in t, so the root exists and is
// unique; it is bracketed and bisected to |residual| <= 1e-12 * S^{2*/2}.
double m_tilde(int n_dim, double alpha1, double alpha2);

// Residual of the m_tilde equation at t (for diagnostics and tests).
double m_tilde_residual(int n_dim, double alpha1, double alpha2, double t);

// Compactness threshold with two critical weights:
// (2+alpha2)/(2(N+alpha2)) * m_tilde.
double ps_threshold_double(int n_dim, double alpha1, double alpha2);

ConstantsReport constants_report(int n_dim, double alpha,
                                 std::optional<double> alpha2 = std::nullopt);

namespace detail {
// Root of c1 t^{e1} + t^{e2} = rhs with c1 >= 0, e1, e2, rhs > 0.
double increasing_two_power_root(double c1, double e1, double e2, double rhs);
}  // namespace detail

}  // namespace henon
