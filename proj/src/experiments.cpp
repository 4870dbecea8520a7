#include "henon/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "henon/special.hpp"

namespace henon {

LogFit fit_loglog(std::span<const double> eps, std::span<const double> vals,
                  bool log_correction) {
    if (eps.size() != vals.size() || eps.size() < 3)
        throw std::invalid_argument("fit_loglog: need >= 3 matched points");
    const std::size_t n = eps.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(eps[i] > 0.0) || !(vals[i] > 0.0))
            throw std::invalid_argument("fit_loglog: data must be positive");
        x[i] = std::log(eps[i]);
        y[i] = std::log(vals[i]);
        if (log_correction) y[i] -= std::log(std::log(1.0 / eps[i]));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LogFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double pred = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - ymean) * (y[i] - ymean);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

namespace {

FitReport make_report(std::string quantity, std::vector<double> eps,
                      std::vector<double> raw, double expected,
                      bool log_expected) {
    FitReport rep;
    rep.quantity = std::move(quantity);
    rep.eps_values = std::move(eps);
    rep.measured.resize(raw.size());
    rep.sign = raw.empty() ? 0 : (raw.back() > 0.0 ? 1 : (raw.back() < 0.0 ? -1 : 0));
    for (std::size_t i = 0; i < raw.size(); ++i)
        rep.measured[i] = std::abs(raw[i]);
    const LogFit plain = fit_loglog(rep.eps_values, rep.measured, false);
    const LogFit corrected = fit_loglog(rep.eps_values, rep.measured, true);
    if (corrected.r_squared > plain.r_squared) {
        rep.fitted_slope = corrected.slope;
        rep.r_squared = corrected.r_squared;
        rep.log_corrected = true;
    } else {
        rep.fitted_slope = plain.slope;
        rep.r_squared = plain.r_squared;
        rep.log_corrected = false;
    }
    rep.expected_slope = expected;
    rep.log_expected = log_expected;
    rep.slope_error = std::abs(rep.fitted_slope - expected);
    return rep;
}

}  // namespace

double expected_slope_grad_deficit(int n_dim) { return n_dim - 2.0; }

double expected_slope_crit_deficit(int n_dim, double alpha) {
    return n_dim + alpha;
}

double expected_slope_l2_mass(int n_dim) { return n_dim == 3 ? 1.0 : 2.0; }
bool expected_log_l2_mass(int n_dim) { return n_dim == 4; }

double expected_slope_perturb_mass(int n_dim, double beta, double p) {
    const double e1 = 0.5 * p * (n_dim - 2);
    const double e2 = n_dim + beta - e1;
    return std::min(e1, e2);
}
bool expected_log_perturb_mass(int n_dim, double beta, double p) {
    return p == (n_dim + beta) / (n_dim - 2.0);
}

double bubble_tail_gradient(int n_dim, double alpha, double eps, double r0) {
    const double c = bubble_coefficient(n_dim, alpha);
    return sphere_area(n_dim) * (n_dim - 2) * c * c *
           std::pow(eps, n_dim - 2.0) * std::pow(r0, -(n_dim - 2.0));
}

double bubble_tail_moment(int n_dim, double alpha, double eps, double gamma_w,
                          double q, double r0) {
    const double decay = q * (n_dim - 2) - (n_dim + gamma_w);
    if (!(decay > 0.0))
        throw std::domain_error("bubble_tail_moment: moment tail does not decay");
    const double c = bubble_coefficient(n_dim, alpha);
    return sphere_area(n_dim) * std::pow(c, q) *
           std::pow(eps, 0.5 * q * (n_dim - 2)) * std::pow(r0, -decay) / decay;
}

double bubble_certified_radius(int n_dim, double alpha, double eps,
                               double rel_tol) {
    const double total =
        std::pow(best_constant(n_dim, alpha), (n_dim + alpha) / (2.0 + alpha));
    const double c = bubble_coefficient(n_dim, alpha);
    const double coef = sphere_area(n_dim) * (n_dim - 2) * c * c *
                        std::pow(eps, n_dim - 2.0);
    return std::pow(coef / (rel_tol * total), 1.0 / (n_dim - 2.0));
}

double bubble_rayleigh_quotient(int n_dim, double alpha, double eps,
                                std::optional<GridSpec> grid_spec) {
    GridSpec gs = grid_spec.value_or(GridSpec{});
    if (gs.r_max <= 0.0) {
        gs.r_max = std::max(bubble_certified_radius(n_dim, alpha, eps, 1e-6),
                            50.0 * eps);
        gs.n_cells = 4000;
        gs.grading = 6.0;
        gs.cell_rule = 12;
    }
    auto grid = build_grid(gs.r_max, gs.n_cells, gs.grading, gs.cell_rule);
    const RadialFunction u = bubble(grid, n_dim, alpha, eps);
    const double q = upper_critical(n_dim, alpha);
    const double num = d12_seminorm_sq(u, n_dim) +
                       bubble_tail_gradient(n_dim, alpha, eps, gs.r_max);
    const double den = weighted_lp(u, n_dim, alpha, q) +
                       bubble_tail_moment(n_dim, alpha, eps, alpha, q, gs.r_max);
    return num / std::pow(den, 2.0 / q);
}

NoncompactReport noncompactness_report(int n_dim, double gamma_w,
                                       std::span<const int> k_list,
                                       std::optional<double> q_opt,
                                       std::optional<GridSpec> grid_spec) {
    if (gamma_w < -2.0)
        throw std::domain_error("noncompactness_report: requires gamma >= -2");
    for (int k : k_list)
        if (k < 1) throw std::domain_error("noncompactness_report: k >= 1");
    const double qc = upper_critical(n_dim, gamma_w);
    const double q = q_opt.value_or(qc + 1.0);
    if (!(q > qc))
        throw std::domain_error("noncompactness_report: probe q must exceed 2*(gamma)");

    GridSpec gs = grid_spec.value_or(GridSpec{});
    if (gs.r_max <= 0.0) {
        // Gaussian tails: exp(-r^2/2*(gamma)) below 1e-30 at the boundary.
        gs.r_max = std::sqrt(140.0 * qc);
        gs.n_cells = 1500;
        gs.grading = 2.0;
        gs.cell_rule = 10;
    }
    auto grid = build_grid(gs.r_max, gs.n_cells, gs.grading, gs.cell_rule);

    const double omega = sphere_area(n_dim);
    NoncompactReport rep;
    rep.n_dim = n_dim;
    rep.gamma_w = gamma_w;
    rep.q = q;
    const double grad_exact = std::pow(qc, 0.5 * (n_dim - 2)) * omega *
                              gamma_fn(0.5 * (n_dim + 2)) / 2.0;
    const double crit_exact = std::pow(2.0, 0.5 * (n_dim + gamma_w - 2)) * omega *
                              gamma_fn(0.5 * (n_dim + gamma_w));
    std::vector<double> ks, qvals;
    for (int k : k_list) {
        const RadialFunction u = gaussian_seq(grid, n_dim, gamma_w, k);
        NoncompactRow row;
        row.k = k;
        row.grad_sq = d12_seminorm_sq(u, n_dim);
        row.grad_exact = grad_exact;
        row.l2_sq = l2_norm_sq(u, n_dim);
        row.l2_exact = omega * std::pow(qc, 0.5 * n_dim) *
                       gamma_fn(0.5 * n_dim) / (2.0 * k);
        row.crit_moment = weighted_lp(u, n_dim, gamma_w, qc);
        row.crit_exact = crit_exact;
        row.q_moment = weighted_lp(u, n_dim, gamma_w, q);
        row.q_exact = std::pow(static_cast<double>(k),
                               0.25 * q * (n_dim - 2) - 0.5 * (n_dim + gamma_w)) *
                      0.5 * omega * std::pow(2.0 * qc / q, 0.5 * (n_dim + gamma_w)) *
                      gamma_fn(0.5 * (n_dim + gamma_w));
        rep.rows.push_back(row);
        ks.push_back(static_cast<double>(k));
        qvals.push_back(row.q_moment);
        rep.max_rel_err_grad = std::max(
            rep.max_rel_err_grad, std::abs(row.grad_sq - grad_exact) / grad_exact);
        rep.max_rel_err_l2 = std::max(
            rep.max_rel_err_l2, std::abs(row.l2_sq - row.l2_exact) / row.l2_exact);
        rep.max_rel_err_crit =
            std::max(rep.max_rel_err_crit,
                     std::abs(row.crit_moment - crit_exact) / crit_exact);
        rep.max_rel_err_q = std::max(
            rep.max_rel_err_q, std::abs(row.q_moment - row.q_exact) / row.q_exact);
    }
    rep.growth_slope_expected = 0.25 * q * (n_dim - 2) - 0.5 * (n_dim + gamma_w);
    if (ks.size() >= 3)
        rep.growth_slope_fitted = fit_loglog(ks, qvals, false).slope;
    else if (ks.size() == 2)
        rep.growth_slope_fitted = std::log(qvals[1] / qvals[0]) / std::log(ks[1] / ks[0]);
    return rep;
}

double second_moment_plateau(int n_dim, double alpha1, double alpha2) {
    if (!(alpha1 > alpha2) || alpha2 <= -2.0)
        throw std::domain_error("second_moment_plateau: requires a1 > a2 > -2");
    static std::mutex cache_mutex;
    static std::map<std::tuple<int, double, double>, double> cache;
    const auto key = std::make_tuple(n_dim, alpha1, alpha2);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const double q2 = upper_critical(n_dim, alpha2);
    auto grid = build_grid(1000.0, 3000, 4.0, 12);
    const RadialFunction u = bubble(grid, n_dim, alpha1, 1.0);
    const double val = weighted_lp(u, n_dim, alpha2, q2) +
                       bubble_tail_moment(n_dim, alpha1, 1.0, alpha2, q2, 1000.0);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache[key] = val;
    return val;
}

std::vector<FitReport> bubble_asymptotics(int n_dim, double alpha1, double beta,
                                          double p,
                                          std::span<const double> eps_list,
                                          std::optional<double> alpha2,
                                          std::optional<GridSpec> grid_spec,
                                          int jobs) {
    if (eps_list.size() < 3)
        throw std::invalid_argument("bubble_asymptotics: need >= 3 eps values");
    for (double e : eps_list)
        if (!(e > 0.0 && e <= 0.5))
            throw std::invalid_argument("bubble_asymptotics: eps must lie in (0, 0.5]");
    if (!(alpha1 > -2.0) || !(beta > -2.0))
        throw std::domain_error("bubble_asymptotics: weights must exceed -2");

    GridSpec gs = grid_spec.value_or(GridSpec{});
    if (gs.r_max <= 0.0) gs = {2.0, 2500, 3.0, 10};
    auto grid = build_grid(gs.r_max, gs.n_cells, gs.grading, gs.cell_rule);
    const double r_inner = 0.5 * gs.r_max;

    const double q1 = upper_critical(n_dim, alpha1);
    const double s_pow =
        std::pow(best_constant(n_dim, alpha1), (n_dim + alpha1) / (2.0 + alpha1));
    const double plateau =
        alpha2 ? second_moment_plateau(n_dim, alpha1, *alpha2) : 0.0;

    struct Point {
        double grad_def, crit_def, l2, perturb, second_def;
    };
    const auto eval_point = [&](double e) {
        const RadialFunction u = cutoff_bubble(grid, n_dim, alpha1, e, r_inner);
        Point pt{};
        pt.grad_def = d12_seminorm_sq(u, n_dim) - s_pow;
        pt.crit_def = s_pow - weighted_lp(u, n_dim, alpha1, q1);
        pt.l2 = l2_norm_sq(u, n_dim);
        pt.perturb = weighted_lp(u, n_dim, beta, p);
        if (alpha2)
            pt.second_def =
                weighted_lp(u, n_dim, *alpha2, upper_critical(n_dim, *alpha2)) -
                plateau;
        return pt;
    };

    std::vector<Point> pts(eps_list.size());
    if (jobs > 1) {
        std::vector<std::future<Point>> futs;
        futs.reserve(eps_list.size());
        for (double e : eps_list)
            futs.push_back(std::async(std::launch::async, eval_point, e));
        for (std::size_t i = 0; i < futs.size(); ++i) pts[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < eps_list.size(); ++i)
            pts[i] = eval_point(eps_list[i]);
    }

    std::vector<double> eps(eps_list.begin(), eps_list.end());
    std::vector<double> grad_def, crit_def, l2, perturb, second_def;
    for (const Point& pt : pts) {
        grad_def.push_back(pt.grad_def);
        crit_def.push_back(pt.crit_def);
        l2.push_back(pt.l2);
        perturb.push_back(pt.perturb);
        second_def.push_back(pt.second_def);
    }

    std::vector<FitReport> out;
    out.push_back(make_report("grad_deficit", eps, grad_def,
                              expected_slope_grad_deficit(n_dim), false));
    out.push_back(make_report("crit_deficit", eps, crit_def,
                              expected_slope_crit_deficit(n_dim, alpha1), false));
    out.push_back(make_report("l2_mass", eps, l2, expected_slope_l2_mass(n_dim),
                              expected_log_l2_mass(n_dim)));
    out.push_back(make_report("perturb_mass", eps, perturb,
                              expected_slope_perturb_mass(n_dim, beta, p),
                              expected_log_perturb_mass(n_dim, beta, p)));
    if (alpha2)
        out.push_back(make_report("second_moment_deficit", eps, second_def,
                                  expected_slope_crit_deficit(n_dim, *alpha2),
                                  false));
    return out;
}

std::vector<CorpusEntry> standard_corpus(std::shared_ptr<const RadialGrid> grid,
                                         int n_dim, double alpha1,
                                         unsigned seed) {
    std::vector<CorpusEntry> corpus;
    const double r_max = grid->r_max();

    for (double e : {1.0, 0.25}) {
        CorpusEntry entry;
        entry.name = "bubble(eps=" + std::to_string(e) + ")";
        entry.u = bubble(grid, n_dim, alpha1, e);
        entry.bubble_tail = true;
        entry.eps = e;
        corpus.push_back(std::move(entry));
    }
    for (double e : {0.5, 0.05})
        corpus.push_back({"cutoff_bubble(eps=" + std::to_string(e) + ")",
                          cutoff_bubble(grid, n_dim, alpha1, e, 0.25 * r_max),
                          false, 0.0});
    for (int k : {1, 4})
        corpus.push_back({"gaussian(k=" + std::to_string(k) + ")",
                          gaussian_seq(grid, n_dim, alpha1, k), false, 0.0});
    corpus.push_back({"exp(-r)",
                      sample_profile(grid, [](double r) { return std::exp(-r); },
                                     [](double r) { return -std::exp(-r); }),
                      false, 0.0});
    corpus.push_back({"exp(-r^2)",
                      sample_profile(grid, [](double r) { return std::exp(-r * r); },
                                     [](double r) { return -2.0 * r * std::exp(-r * r); }),
                      false, 0.0});
    const double r0 = r_max / 3.0;
    corpus.push_back(
        {"bump", sample_profile(
                     grid,
                     [r0](double r) {
                         const double s = r / r0;
                         return s < 1.0 ? std::pow(1.0 - s * s, 3) : 0.0;
                     },
                     [r0](double r) {
                         const double s = r / r0;
                         return s < 1.0 ? -6.0 * s / r0 * std::pow(1.0 - s * s, 2)
                                        : 0.0;
                     }),
         false, 0.0});

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_real_distribution<double> width(0.5, 3.0);
    std::uniform_real_distribution<double> center(0.0, 5.0);
    for (int s = 0; s < 3; ++s) {
        struct Bump {
            double c, a, b;
        };
        std::vector<Bump> bumps(4);
        for (auto& bp : bumps) bp = {coef(rng), width(rng), center(rng)};
        auto f = [bumps](double r) {
            double v = 0.0;
            for (const auto& bp : bumps)
                v += bp.c * std::exp(-bp.a * (r - bp.b) * (r - bp.b));
            return v * std::exp(-r * r / 50.0);
        };
        auto df = [bumps](double r) {
            double v = 0.0, dv = 0.0;
            for (const auto& bp : bumps) {
                const double g = bp.c * std::exp(-bp.a * (r - bp.b) * (r - bp.b));
                v += g;
                dv += g * (-2.0 * bp.a * (r - bp.b));
            }
            const double env = std::exp(-r * r / 50.0);
            return dv * env + v * env * (-r / 25.0);
        };
        corpus.push_back({"random_smooth(" + std::to_string(s) + ")",
                          sample_profile(grid, f, df), false, 0.0});
    }
    return corpus;
}

AuditReport inequality_audit(const std::vector<CorpusEntry>& corpus,
                             const ProblemParams& params, double rel_tol) {
    if (corpus.empty())
        throw std::invalid_argument("inequality_audit: corpus is empty");
    const int n_dim = params.n_dim;
    const double a1 = params.alpha1;
    const double q1 = upper_critical(n_dim, a1);
    const double s1 = best_constant(n_dim, a1);

    AuditReport rep;
    rep.rel_tol = rel_tol;
    rep.min_rel_slack = std::numeric_limits<double>::infinity();

    const auto push = [&](const std::string& fn, const std::string& ineq,
                          double lhs, double rhs) {
        AuditEntry e{fn, ineq, lhs, rhs, rhs - lhs, false};
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        const double rel = e.slack / scale;
        e.violated = rel < -rel_tol;
        rep.min_rel_slack = std::min(rep.min_rel_slack, rel);
        if (e.violated) ++rep.violations;
        rep.entries.push_back(std::move(e));
    };

    for (const CorpusEntry& entry : corpus) {
        const RadialFunction& u = entry.u;
        const double r_max = u.grid->r_max();
        double grad2 = d12_seminorm_sq(u, n_dim);
        double moment1 = weighted_lp(u, n_dim, a1, q1);
        if (entry.bubble_tail) {
            grad2 += bubble_tail_gradient(n_dim, a1, entry.eps, r_max);
            moment1 += bubble_tail_moment(n_dim, a1, entry.eps, a1, q1, r_max);
        }
        if (moment1 > 0.0)
            push(entry.name, "weighted_sobolev", s1 * std::pow(moment1, 2.0 / q1),
                 grad2);

        // Pointwise decay bound at the mesh nodes away from the origin.
        const double decay_rhs =
            radial_decay_constant(n_dim) * std::sqrt(grad2);
        double worst = 0.0;
        for (std::size_t i = 1; i < u.node_values.size(); ++i)
            worst = std::max(worst,
                             std::abs(u.node_values[i]) *
                                 std::pow(u.grid->nodes()[i], 0.5 * (n_dim - 2)));
        push(entry.name, "pointwise_decay", worst, decay_rhs);

        if (params.alpha2) {
            const double a2 = *params.alpha2;
            const double q2 = upper_critical(n_dim, a2);
            double moment2 = weighted_lp(u, n_dim, a2, q2);
            if (entry.bubble_tail)
                moment2 += bubble_tail_moment(n_dim, a1, entry.eps, a2, q2, r_max);
            // Moment comparison: the higher weight against the lower one.
            const double ctil = weight_comparison_constant(n_dim, a1, a2);
            push(entry.name, "moment_comparison",
                 moment1,
                 ctil * std::pow(grad2, 0.5 * (q1 - q2)) * moment2);

            // Conditional interpolation bound (sigma = a2 below ς = a1);
            // the intermediate constant uses the closed-form best constant.
            const double m_max = (2.0 + a2) / (2.0 + a1) * q1;
            const double interp_m = 0.9 * m_max;
            const double theta = (a2 * q1 - interp_m * a1) / (q1 - interp_m);
            if (theta > -2.0) {
                const double tau = interp_m / q2;
                const double s_theta = best_constant(n_dim, theta);
                const double lhs = std::pow(moment2, 1.0 / q2);
                const double rhs = std::pow(s_theta, -0.5 * (1.0 - tau)) *
                                   std::pow(moment1, tau / q1) *
                                   std::pow(grad2, 0.5 * (1.0 - tau));
                push(entry.name, "interpolation_conditional", lhs, rhs);
            }
        }
    }
    return rep;
}

std::vector<EscapeRow> threshold_escape_demo(int n_dim, double alpha,
                                             std::span<const double> eps_list,
                                             std::optional<GridSpec> grid_spec) {
    if (!(alpha > 0.0))
        throw std::domain_error("threshold_escape_demo: requires alpha > 0");
    GridSpec gs = grid_spec.value_or(GridSpec{});
    if (gs.r_max <= 0.0) gs = {2.0, 2500, 3.0, 10};
    auto grid = build_grid(gs.r_max, gs.n_cells, gs.grading, gs.cell_rule);

    ProblemParams params;
    params.n_dim = n_dim;
    params.alpha1 = alpha;
    params.beta = 0.0;
    params.p = 0.5 * (lower_critical(n_dim, 0.0) + upper_critical(n_dim, 0.0));
    params.lambda = 0.0;
    EnergyModel model(grid, params);

    const double threshold = ps_threshold_single(n_dim, alpha);
    std::vector<EscapeRow> rows;
    for (double e : eps_list) {
        const RadialFunction u = cutoff_bubble(grid, n_dim, alpha, e, 0.5 * gs.r_max);
        const EnergyModel::Terms t = model.terms(u);
        const double scale = model.nehari_scale_from_terms(t);
        EscapeRow row;
        row.eps = e;
        row.fibering_max = model.phi_of(t, scale);
        row.threshold = threshold;
        row.gap = row.fibering_max - threshold;
        const double mass = l2_norm_sq(u, n_dim) * scale * scale;
        row.l2_mass = mass;
        row.mass_fraction = mass / (scale * scale * t.a);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace henon
