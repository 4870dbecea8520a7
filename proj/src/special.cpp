#include "henon/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace henon {

namespace {

constexpr long double kSqrtTwoPi = 2.50662827463100050241576528481104525L;

// Lanczos coefficients for g = 7, n = 9 (Godfrey's tabulation).  Max
// relative error of the rational sum is below 1e-14 for real x > 0.
constexpr long double kLanczos[9] = {
    0.99999999999980993L,
    676.5203681218851L,
    -1259.1392167224028L,
    771.32342877765313L,
    -176.61502916214059L,
    12.507343278686905L,
    -0.13857109526572012L,
    9.9843695780195716e-6L,
    1.5056327351493116e-7L,
};

long double lanczos_sum(long double z) {
    long double a = kLanczos[0];
    for (int k = 1; k < 9; ++k) a += kLanczos[k] / (z - 1.0L + k);
    return a;
}

void require_dim(int n_dim) {
    if (n_dim < 3) throw std::domain_error("dimension must satisfy N >= 3");
}

}  // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("gamma_fn: argument must be finite and > 0");
    const long double z = x;
    const long double t = z + 6.5L;
    // Split the power so intermediates stay inside long double range up to
    // the double overflow point near x = 171.6.
    const long double half = powl(t, 0.5L * (z - 0.5L)) * expl(-0.5L * t);
    return static_cast<double>(kSqrtTwoPi * lanczos_sum(z) * half * half);
}

double lgamma_fn(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("lgamma_fn: argument must be finite and > 0");
    const long double z = x;
    const long double t = z + 6.5L;
    const long double v =
        logl(kSqrtTwoPi) + (z - 0.5L) * logl(t) - t + logl(lanczos_sum(z));
    return static_cast<double>(v);
}

double sphere_area(int n_dim) {
    require_dim(n_dim);
    const double half_n = 0.5 * n_dim;
    return 2.0 * std::pow(M_PI, half_n) / gamma_fn(half_n);
}

double upper_critical(int n_dim, double gamma_w) {
    require_dim(n_dim);
    if (gamma_w < -2.0)
        throw std::domain_error("upper_critical: requires gamma >= -2");
    return 2.0 * (n_dim + gamma_w) / (n_dim - 2);
}

double lower_critical(int n_dim, double gamma_w) {
    require_dim(n_dim);
    if (gamma_w < -2.0)
        throw std::domain_error("lower_critical: requires gamma >= -2");
    if (gamma_w > 0.0) return 2.0 * (n_dim - 1 + gamma_w) / (n_dim - 1);
    return 2.0;
}

ExponentPair crit_exponents(int n_dim, double gamma_w) {
    return {upper_critical(n_dim, gamma_w), lower_critical(n_dim, gamma_w)};
}

double best_constant(int n_dim, double alpha) {
    require_dim(n_dim);
    if (alpha <= -2.0)
        throw std::domain_error("best_constant: requires alpha > -2");
    const double na = n_dim + alpha;
    const double ta = 2.0 + alpha;
    const double x = na / ta;
    double bracket;
    if (2.0 * x <= 170.0) {
        const double g1 = gamma_fn(x);
        bracket = sphere_area(n_dim) / ta * g1 * g1 / gamma_fn(2.0 * x);
    } else {
        // Large-argument path: the Gamma ratio via logs.
        bracket = sphere_area(n_dim) / ta *
                  std::exp(2.0 * lgamma_fn(x) - lgamma_fn(2.0 * x));
    }
    return na * (n_dim - 2) * std::pow(bracket, ta / na);
}

double sobolev_constant(int n_dim) {
    require_dim(n_dim);
    const double ratio = gamma_fn(0.5 * n_dim) / gamma_fn(static_cast<double>(n_dim));
    return M_PI * n_dim * (n_dim - 2) * std::pow(ratio, 2.0 / n_dim);
}

double bubble_coefficient(int n_dim, double alpha) {
    require_dim(n_dim);
    if (alpha <= -2.0)
        throw std::domain_error("bubble_coefficient: requires alpha > -2");
    const double base = (n_dim + alpha) * (n_dim - 2);
    return std::pow(base, (n_dim - 2) / (4.0 + 2.0 * alpha));
}

double ps_threshold_single(int n_dim, double alpha) {
    const double s = best_constant(n_dim, alpha);
    const double na = n_dim + alpha;
    return (2.0 + alpha) / (2.0 * na) * std::pow(s, na / (2.0 + alpha));
}

double weight_comparison_constant(int n_dim, double sigma_hi, double sigma_lo) {
    require_dim(n_dim);
    if (!(sigma_hi > sigma_lo) || sigma_lo <= -2.0)
        throw std::domain_error(
            "weight_comparison_constant: requires hi > lo > -2");
    return std::pow((n_dim - 2) * sphere_area(n_dim),
                    (sigma_lo - sigma_hi) / (n_dim - 2));
}

double radial_decay_constant(int n_dim) {
    require_dim(n_dim);
    return 1.0 / std::sqrt((n_dim - 2) * sphere_area(n_dim));
}

namespace detail {

double increasing_two_power_root(double c1, double e1, double e2, double rhs) {
    if (!(rhs > 0.0) || !(e1 > 0.0) || !(e2 > 0.0) || c1 < 0.0)
        throw std::domain_error("increasing_two_power_root: bad arguments");
    const auto f = [&](double t) {
        return c1 * std::pow(t, e1) + std::pow(t, e2) - rhs;
    };
    // Bracket: start from twice the c1 = 0 closed-form root and double
    // until the sign changes (f is strictly increasing, f(0+) = -rhs < 0).
    double lo = 1e-8;
    double hi = 2.0 * std::pow(rhs, 1.0 / e2);
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw std::runtime_error("increasing_two_power_root: no bracket");
    }
    if (f(lo) > 0.0) lo = std::numeric_limits<double>::min();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * hi) break;
    }
    double t = 0.5 * (lo + hi);
    // Two guarded Newton polish steps.
    for (int it = 0; it < 2; ++it) {
        const double df =
            c1 * e1 * std::pow(t, e1 - 1.0) + e2 * std::pow(t, e2 - 1.0);
        const double step = f(t) / df;
        const double next = t - step;
        if (next > 0.0 && std::isfinite(next)) t = next;
    }
    return t;
}

}  // namespace detail

double m_tilde(int n_dim, double alpha1, double alpha2) {
    require_dim(n_dim);
    if (!(alpha1 > alpha2) || alpha2 <= -2.0)
        throw std::domain_error("m_tilde: requires alpha1 > alpha2 > -2");
    const double c1 = weight_comparison_constant(n_dim, alpha1, alpha2);
    const double e1 = 0.5 * (upper_critical(n_dim, alpha1) - 2.0);
    const double e2 = 0.5 * (upper_critical(n_dim, alpha2) - 2.0);
    const double rhs =
        std::pow(best_constant(n_dim, alpha2), 0.5 * upper_critical(n_dim, alpha2));
    return detail::increasing_two_power_root(c1, e1, e2, rhs);
}

double m_tilde_residual(int n_dim, double alpha1, double alpha2, double t) {
    const double c1 = weight_comparison_constant(n_dim, alpha1, alpha2);
    const double e1 = 0.5 * (upper_critical(n_dim, alpha1) - 2.0);
    const double e2 = 0.5 * (upper_critical(n_dim, alpha2) - 2.0);
    const double rhs =
        std::pow(best_constant(n_dim, alpha2), 0.5 * upper_critical(n_dim, alpha2));
    return c1 * std::pow(t, e1) + std::pow(t, e2) - rhs;
}

double ps_threshold_double(int n_dim, double alpha1, double alpha2) {
    const double mt = m_tilde(n_dim, alpha1, alpha2);
    return (2.0 + alpha2) / (2.0 * (n_dim + alpha2)) * mt;
}

ConstantsReport constants_report(int n_dim, double alpha,
                                 std::optional<double> alpha2) {
    ConstantsReport rep;
    rep.n_dim = n_dim;
    rep.alpha = alpha;
    rep.alpha2 = alpha2;
    rep.omega_n = sphere_area(n_dim);
    rep.s_alpha = best_constant(n_dim, alpha);
    rep.c_alpha_n = bubble_coefficient(n_dim, alpha);
    rep.threshold_single = ps_threshold_single(n_dim, alpha);
    if (alpha2) {
        rep.m_tilde = m_tilde(n_dim, alpha, *alpha2);
        rep.threshold_double = ps_threshold_double(n_dim, alpha, *alpha2);
    }
    return rep;
}

}  // namespace henon
