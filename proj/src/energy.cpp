#include "henon/energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "henon/fem.hpp"
#include "henon/special.hpp"

namespace henon {

void ProblemParams::validate() const {
    if (n_dim < 3) throw std::invalid_argument("params: N >= 3 violated");
    if (!(alpha1 > -2.0))
        throw std::invalid_argument("params: alpha > -2 violated");
    if (!(beta > -2.0)) throw std::invalid_argument("params: beta > -2 violated");
    if (critical_coeff < 0.0)
        throw std::invalid_argument("params: critical_coeff >= 0 violated");
    const double p_hi = upper_critical(n_dim, beta);
    const double p_lo = lower_critical(n_dim, beta);
    if (beta >= 0.0) {
        if (!(p > p_lo && p < p_hi)) {
            std::ostringstream msg;
            msg << "params: 2_*(beta) < p < 2^*(beta) violated for beta >= 0: "
                << "need " << p_lo << " < p < " << p_hi << ", got p=" << p;
            throw std::invalid_argument(msg.str());
        }
    } else {
        if (!(p >= p_lo && p < p_hi)) {
            std::ostringstream msg;
            msg << "params: 2_*(beta) <= p < 2^*(beta) violated for -2 < beta < 0: "
                << "need " << p_lo << " <= p < " << p_hi << ", got p=" << p;
            throw std::invalid_argument(msg.str());
        }
    }
    if (alpha2.has_value() != mu.has_value())
        throw std::invalid_argument(
            "params: alpha2 and mu must be supplied together");
    if (alpha2) {
        if (!(alpha1 > *alpha2 && *alpha2 > -2.0)) {
            std::ostringstream msg;
            msg << "params: alpha1 > alpha2 > -2 violated: alpha1=" << alpha1
                << ", alpha2=" << *alpha2;
            throw std::invalid_argument(msg.str());
        }
    }
}

EnergyModel::EnergyModel(std::shared_ptr<const RadialGrid> grid,
                         ProblemParams params)
    : grid_(std::move(grid)), params_(std::move(params)),
      q1_(upper_critical(params_.n_dim, params_.alpha1)),
      w0_(weight_vector(*grid_, params_.n_dim, 0.0)),
      wa1_(weight_vector(*grid_, params_.n_dim, params_.alpha1)),
      wb_(weight_vector(*grid_, params_.n_dim, params_.beta)),
      h1_(grid_, params_.n_dim) {
    params_.validate();
    if (params_.alpha2) {
        q2_ = upper_critical(params_.n_dim, *params_.alpha2);
        wa2_ = weight_vector(*grid_, params_.n_dim, *params_.alpha2);
    }
}

EnergyModel::Terms EnergyModel::terms(const RadialFunction& u) const {
    if (u.grid.get() != grid_.get())
        throw std::invalid_argument("energy: function grid mismatch");
    Terms t;
    const std::size_t n = u.n_points();
    const double kappa = params_.critical_coeff;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = u.values[j];
        const double dv = u.derivs[j];
        const double av = std::abs(v);
        t.a += w0_[j] * (dv * dv + v * v);
        t.b += wa1_[j] * std::pow(av, q1_);
        t.d += wb_[j] * std::pow(av, params_.p);
    }
    t.b *= kappa;
    if (params_.alpha2)
        for (std::size_t j = 0; j < n; ++j)
            t.c += wa2_[j] * std::pow(std::abs(u.values[j]), q2_);
    return t;
}

double EnergyModel::phi_of(const Terms& t, double s) const {
    const double mu = params_.mu.value_or(0.0);
    double v = 0.5 * s * s * t.a - std::pow(s, q1_) / q1_ * t.b -
               params_.lambda * std::pow(s, params_.p) / params_.p * t.d;
    if (params_.alpha2) v -= mu * std::pow(s, q2_) / q2_ * t.c;
    return v;
}

double EnergyModel::psi_of(const Terms& t, double s) const {
    const double mu = params_.mu.value_or(0.0);
    double v = s * s * t.a - std::pow(s, q1_) * t.b -
               params_.lambda * std::pow(s, params_.p) * t.d;
    if (params_.alpha2) v -= mu * std::pow(s, q2_) * t.c;
    return v;
}

EnergyBreakdown EnergyModel::energy(const RadialFunction& u) const {
    const Terms t = terms(u);
    EnergyBreakdown out;
    out.a = t.a;
    out.b = t.b;
    out.c = t.c;
    out.d = t.d;
    out.phi = phi_of(t);
    out.nehari_residual = psi_of(t);
    return out;
}

double EnergyModel::derivative_action(const RadialFunction& u,
                                      const RadialFunction& v) const {
    if (u.grid.get() != grid_.get() || v.grid.get() != grid_.get())
        throw std::invalid_argument("derivative_action: grid mismatch");
    const double mu = params_.mu.value_or(0.0);
    const double kappa = params_.critical_coeff;
    double s = 0.0;
    for (std::size_t j = 0; j < u.n_points(); ++j) {
        const double uv = u.values[j];
        const double au = std::abs(uv);
        double nl = kappa * wa1_[j] * std::pow(au, q1_ - 2.0) * uv +
                    params_.lambda * wb_[j] * std::pow(au, params_.p - 2.0) * uv;
        if (params_.alpha2)
            nl += mu * wa2_[j] * std::pow(au, q2_ - 2.0) * uv;
        s += w0_[j] * (u.derivs[j] * v.derivs[j] + uv * v.values[j]) -
             nl * v.values[j];
    }
    return s;
}

double EnergyModel::nehari_value(const RadialFunction& u) const {
    const Terms t = terms(u);
    if (t.a == 0.0)
        throw std::domain_error("nehari_value: the manifold excludes u = 0");
    return psi_of(t);
}

namespace {

struct FiberTerm {
    double coeff;  // may be negative (mu < 0 or lambda < 0)
    double expo;   // exponent of t in Psi
};

}  // namespace

double EnergyModel::nehari_scale_from_terms(const Terms& t) const {
    if (!(t.a > 0.0))
        throw std::domain_error("nehari_scale: the manifold excludes u = 0");
    const double mu = params_.mu.value_or(0.0);
    const double p = params_.p;

    // Quadratic part; a p = 2 perturbation folds into it.
    double a_eff = t.a;
    std::vector<FiberTerm> nl;
    if (t.b != 0.0) nl.push_back({t.b, q1_});
    if (params_.alpha2 && mu * t.c != 0.0) nl.push_back({mu * t.c, q2_});
    if (params_.lambda * t.d != 0.0) {
        if (p == 2.0)
            a_eff -= params_.lambda * t.d;
        else
            nl.push_back({params_.lambda * t.d, p});
    }
    if (nl.empty())
        throw FiberingError(
            "fibering degenerate: no superquadratic term in the fibering map");
    if (a_eff <= 0.0) {
        std::string msg =
            "fibering degenerate: quadratic part A - lambda int |x|^beta u^2 "
            "is non-positive";
        if (coercivity_hint()) msg += " (p = 2 regime requires lambda < lambda_{1,beta})";
        throw FiberingError(msg);
    }

    const bool all_nonneg =
        std::all_of(nl.begin(), nl.end(), [](const FiberTerm& f) {
            return f.coeff > 0.0;
        });

    // psi(t)/t^2 = a_eff - sum coeff t^{expo-2}; derivative of the same.
    const auto h = [&](double s) {
        double v = a_eff;
        for (const auto& f : nl) v -= f.coeff * std::pow(s, f.expo - 2.0);
        return v;
    };
    const auto dh = [&](double s) {
        double v = 0.0;
        for (const auto& f : nl)
            v -= f.coeff * (f.expo - 2.0) * std::pow(s, f.expo - 3.0);
        return v;
    };
    const auto polish = [&](double s) {
        for (int it = 0; it < 3; ++it) {
            const double d = dh(s);
            if (d == 0.0) break;
            const double next = s - h(s) / d;
            if (next > 0.0 && std::isfinite(next)) s = next;
        }
        return s;
    };

    if (all_nonneg) {
        // h is strictly decreasing: bracket by doubling/halving from t = 1.
        double lo = 1.0, hi = 1.0;
        if (h(1.0) > 0.0) {
            while (h(hi) > 0.0) {
                hi *= 2.0;
                if (hi > 1e150)
                    throw FiberingError("fibering degenerate: no sign change found");
            }
            lo = 0.5 * hi;
        } else {
            while (h(lo) <= 0.0) {
                lo *= 0.5;
                if (lo < 1e-150)
                    throw FiberingError("fibering degenerate: no sign change found");
            }
            hi = 2.0 * lo;
        }
        for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) > 0.0 ? lo : hi) = mid;
        }
        const double s = polish(0.5 * (lo + hi));
        if (std::abs(h(s)) > 1e-12 * t.a)
            throw FiberingError("fibering projection did not meet its residual");
        return s;
    }

    // Mixed signs (mu < 0): locate the global maximizer of Phi(t u) on a
    // log grid first, then refine the stationary point.
    double t_ref = 1.0;
    for (const auto& f : nl)
        if (f.coeff > 0.0) {
            t_ref = std::pow(a_eff / f.coeff, 1.0 / (f.expo - 2.0));
            break;
        }
    const int n_scan = 512;
    const double lo_fac = 1e-4, hi_fac = 1e4;
    double best_t = 0.0, best_phi = 0.0;  // Phi(0) = 0 reference
    int best_idx = -1;
    std::vector<double> ts(n_scan);
    for (int i = 0; i < n_scan; ++i) {
        const double s = t_ref * lo_fac *
                         std::pow(hi_fac / lo_fac, static_cast<double>(i) / (n_scan - 1));
        ts[i] = s;
        const double v = phi_of(t, s);
        if (v > best_phi) {
            best_phi = v;
            best_t = s;
            best_idx = i;
        }
    }
    if (best_idx <= 0 || best_idx >= n_scan - 1)
        throw FiberingError(
            "fibering degenerate: no interior positive maximizer located "
            "(mu < 0 regime outside its admissible range)");
    double lo = ts[best_idx - 1], hi = ts[best_idx + 1];
    // Psi/t = dPhi/dt changes sign from + to - across the maximizer.
    if (!(psi_of(t, lo) > 0.0 && psi_of(t, hi) < 0.0))
        throw FiberingError("fibering degenerate: maximizer bracket invalid");
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (psi_of(t, mid) > 0.0 ? lo : hi) = mid;
    }
    double s = polish(0.5 * (lo + hi));
    if (!(s > 0.0) || std::abs(psi_of(t, s)) > 1e-12 * s * s * t.a)
        throw FiberingError("fibering projection did not meet its residual");
    (void)best_t;
    return s;
}

bool EnergyModel::coercivity_hint() const { return params_.coercivity_sensitive(); }

double EnergyModel::nehari_scale(const RadialFunction& u) const {
    return nehari_scale_from_terms(terms(u));
}

double EnergyModel::nehari_regularity(const RadialFunction& u) const {
    const Terms t = terms(u);
    const double psi = psi_of(t);
    if (std::abs(psi) > 1e-8 * t.a)
        throw std::invalid_argument(
            "nehari_regularity: u is not on the Nehari manifold");
    const double mu = params_.mu.value_or(0.0);
    double v = 2.0 * t.a - q1_ * t.b - params_.lambda * params_.p * t.d;
    if (params_.alpha2) v -= mu * q2_ * t.c;
    return v;
}

double EnergyModel::fibering_max(const RadialFunction& u) const {
    const Terms t = terms(u);
    return phi_of(t, nehari_scale_from_terms(t));
}

std::vector<double> EnergyModel::residual_on_basis(const RadialFunction& u) const {
    if (u.grid.get() != grid_.get())
        throw std::invalid_argument("residual_on_basis: grid mismatch");
    const double mu = params_.mu.value_or(0.0);
    const double kappa = params_.critical_coeff;
    std::vector<double> f_val(u.n_points());
    for (std::size_t j = 0; j < u.n_points(); ++j) {
        const double uv = u.values[j];
        const double au = std::abs(uv);
        double nl = kappa * wa1_[j] * std::pow(au, q1_ - 2.0) * uv +
                    params_.lambda * wb_[j] * std::pow(au, params_.p - 2.0) * uv;
        if (params_.alpha2)
            nl += mu * wa2_[j] * std::pow(au, q2_ - 2.0) * uv;
        f_val[j] = uv - nl / w0_[j];
    }
    return fem::basis_action(*grid_, params_.n_dim, f_val, u.derivs);
}

std::vector<double> EnergyModel::constraint_gradient_on_basis(
    const RadialFunction& u) const {
    if (u.grid.get() != grid_.get())
        throw std::invalid_argument("constraint_gradient_on_basis: grid mismatch");
    const double mu = params_.mu.value_or(0.0);
    const double kappa = params_.critical_coeff;
    std::vector<double> f_val(u.n_points());
    std::vector<double> f_grad(u.n_points());
    for (std::size_t j = 0; j < u.n_points(); ++j) {
        const double uv = u.values[j];
        const double au = std::abs(uv);
        double nl = kappa * q1_ * wa1_[j] * std::pow(au, q1_ - 2.0) * uv +
                    params_.lambda * params_.p * wb_[j] *
                        std::pow(au, params_.p - 2.0) * uv;
        if (params_.alpha2)
            nl += mu * q2_ * wa2_[j] * std::pow(au, q2_ - 2.0) * uv;
        f_val[j] = 2.0 * uv - nl / w0_[j];
        f_grad[j] = 2.0 * u.derivs[j];
    }
    return fem::basis_action(*grid_, params_.n_dim, f_val, f_grad);
}

RadialFunction EnergyModel::riesz_gradient_of(const RadialFunction& u) const {
    return h1_.riesz(residual_on_basis(u));
}

EnergyBreakdown energy(const RadialFunction& u, const ProblemParams& params) {
    return EnergyModel(u.grid, params).energy(u);
}
double derivative_action(const RadialFunction& u, const RadialFunction& v,
                         const ProblemParams& params) {
    return EnergyModel(u.grid, params).derivative_action(u, v);
}
double nehari_value(const RadialFunction& u, const ProblemParams& params) {
    return EnergyModel(u.grid, params).nehari_value(u);
}
double nehari_scale(const RadialFunction& u, const ProblemParams& params) {
    return EnergyModel(u.grid, params).nehari_scale(u);
}
double nehari_regularity(const RadialFunction& u, const ProblemParams& params) {
    return EnergyModel(u.grid, params).nehari_regularity(u);
}
double fibering_max(const RadialFunction& u, const ProblemParams& params) {
    return EnergyModel(u.grid, params).fibering_max(u);
}

}  // namespace henon
