// Command line front end: reproducible runs with structured config,
// machine-readable JSON/CSV output, and regime validation.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "henon/energy.hpp"
#include "henon/experiments.hpp"
#include "henon/io.hpp"
#include "henon/solver.hpp"
#include "henon/space.hpp"
#include "henon/special.hpp"

namespace {

using namespace henon;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadParams = 2;
constexpr int kExitNotConverged = 3;

struct GridOptions {
    double r_max = 40.0;
    int n_cells = 1500;
    double grading = 2.0;
    int cell_rule = 6;
};

struct CommonOptions {
    std::string out_prefix;
    int jobs = 1;
};

void add_grid_options(CLI::App* cmd, GridOptions& g) {
    cmd->add_option("--rmax", g.r_max, "truncation radius");
    cmd->add_option("--cells", g.n_cells, "number of mesh cells");
    cmd->add_option("--grading", g.grading, "mesh grading exponent toward r=0");
    cmd->add_option("--cell-rule", g.cell_rule, "Gauss-Legendre order per cell");
}

void echo_grid(JsonWriter& w, const GridOptions& g) {
    w.key("grid").begin_object();
    w.key("rmax").value(g.r_max);
    w.key("cells").value(g.n_cells);
    w.key("grading").value(g.grading);
    w.key("cell_rule").value(g.cell_rule);
    w.end_object();
}

void echo_params(JsonWriter& w, const ProblemParams& p) {
    w.key("params").begin_object();
    w.key("N").value(p.n_dim);
    w.key("alpha").value(p.alpha1);
    w.key("alpha2").value(p.alpha2);
    w.key("beta").value(p.beta);
    w.key("p").value(p.p);
    w.key("lambda").value(p.lambda);
    w.key("mu").value(p.mu);
    w.key("critical_coeff").value(p.critical_coeff);
    w.end_object();
}

std::string num_tag(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

void emit(const CommonOptions& common, const std::string& stem,
          const std::string& json) {
    std::cout << json << "\n";
    if (!common.out_prefix.empty())
        write_text_file(common.out_prefix + "_" + stem + ".json", json);
}

// Validates the inequality set claimed by --regime; returns a message for
// the first violated inequality, empty when the claim holds.
std::string check_regime(const std::string& regime, const ProblemParams& par,
                         const GridOptions& gopts) {
    const int n = par.n_dim;
    const double beta = par.beta;
    const double p = par.p;
    const double p_hi = upper_critical(n, beta);
    const double p_lo = lower_critical(n, beta);
    const auto lambda1 = [&]() {
        auto grid = build_grid(gopts.r_max, gopts.n_cells, gopts.grading,
                               gopts.cell_rule);
        return first_eigenpair(n, beta, grid).lambda1;
    };

    if (regime == "3.1i") {
        if (par.alpha2) return "3.1i: single-weight regime, alpha2 must be absent";
        if (!(p > p_lo && p < p_hi)) return "3.1i: 2_*(beta) < p < 2^*(beta) violated";
        if (!(par.lambda > 0.0)) return "3.1i: lambda > 0 violated";
        return "";
    }
    if (regime == "3.1ii") {
        if (par.alpha2) return "3.1ii: single-weight regime, alpha2 must be absent";
        if (!(par.lambda > 0.0)) return "3.1ii: lambda > 0 violated";
        if (n == 3 && beta >= -1.0 && !(p > 2.0 * (2.0 + beta) && p < p_hi))
            return "3.1ii: 2(2+beta) < p < 2^*(beta) violated (N=3, beta >= -1)";
        if (n == 3 && beta < -1.0 && !(p > 2.0 && p < p_hi))
            return "3.1ii: 2 < p < 2^*(beta) violated (N=3, beta < -1)";
        if (n >= 4 && beta <= 0.0 && !(p > 2.0 && p < p_hi))
            return "3.1ii: 2 < p < 2^*(beta) violated (N >= 4, beta <= 0)";
        if (n >= 4 && beta > 0.0 &&
            !(p > 2.0 * (n - 2 + beta) / (n - 2) && p < p_hi))
            return "3.1ii: 2(N-2+beta)/(N-2) < p < 2^*(beta) violated (N >= 4, beta > 0)";
        return "";
    }
    if (regime == "3.1iii" || regime == "4.7iii") {
        if (p != 2.0) return regime + ": p = 2 violated";
        if (n == 3 && !(beta > -2.0 && beta <= -1.0))
            return regime + ": -2 < beta <= -1 violated (N=3)";
        if (n >= 4 && !(beta > -2.0 && beta < 0.0))
            return regime + ": -2 < beta < 0 violated (N >= 4)";
        if (regime == "4.7iii" && !(par.mu && *par.mu < 0.0))
            return "4.7iii: mu < 0 violated";
        if (regime == "3.1iii" && par.alpha2)
            return "3.1iii: single-weight regime, alpha2 must be absent";
        const double l1 = lambda1();
        if (!(par.lambda > 0.0 && par.lambda < l1)) {
            std::ostringstream msg;
            msg << regime << ": 0 < lambda < lambda_{1,beta} violated "
                << "(lambda_{1,beta} ~= " << l1 << ")";
            return msg.str();
        }
        return "";
    }
    if (regime == "4.3") {
        if (!par.alpha2 || !par.mu) return "4.3: alpha2 and mu required";
        if (!(*par.mu > 0.0)) return "4.3: mu > 0 violated";
        if (!(p > p_lo && p < p_hi)) return "4.3: 2_*(beta) < p < 2^*(beta) violated";
        if (!(par.lambda > 0.0)) return "4.3: lambda > 0 violated";
        return "";
    }
    if (regime == "4.7i") {
        if (!par.alpha2 || !par.mu) return "4.7i: alpha2 and mu required";
        if (!(*par.mu < 0.0)) return "4.7i: mu < 0 violated";
        const double q2 = upper_critical(n, *par.alpha2);
        if (!(p > std::max(q2, p_lo) && p < p_hi))
            return "4.7i: max{2^*(alpha2), 2_*(beta)} < p < 2^*(beta) violated";
        if (!(par.lambda > 0.0)) return "4.7i: lambda > 0 violated";
        return "";
    }
    if (regime == "4.7ii") {
        if (!par.alpha2 || !par.mu) return "4.7ii: alpha2 and mu required";
        if (!(*par.mu < 0.0)) return "4.7ii: mu < 0 violated";
        if (!(par.lambda > 0.0)) return "4.7ii: lambda > 0 violated";
        const double q2 = upper_critical(n, *par.alpha2);
        if (n == 3 && beta >= -1.0 &&
            !(p > std::max(2.0 * (3.0 + *par.alpha2), 2.0 * (2.0 + beta)) && p < p_hi))
            return "4.7ii: max{2(3+alpha2), 2(2+beta)} < p < 2^*(beta) violated (N=3, beta >= -1)";
        if (n == 3 && beta < -1.0 && !(p > 6.0 + 2.0 * *par.alpha2 && p < p_hi))
            return "4.7ii: 6+2 alpha2 < p < 2^*(beta) violated (N=3, beta < -1)";
        if (n >= 4 && beta <= 0.0 && !(p > q2 && p < p_hi))
            return "4.7ii: 2^*(alpha2) < p < 2^*(beta) violated (N >= 4, beta <= 0)";
        if (n >= 4 && beta > 0.0 &&
            !(p > std::max(q2, 2.0 * (n - 2 + beta) / (n - 2)) && p < p_hi))
            return "4.7ii: max{2^*(alpha2), 2(N-2+beta)/(N-2)} < p < 2^*(beta) violated (N >= 4, beta > 0)";
        return "";
    }
    return "unknown regime tag: " + regime;
}

int cmd_constants(int n_dim, double alpha, std::optional<double> alpha2,
                  const CommonOptions& common) {
    const ConstantsReport rep = constants_report(n_dim, alpha, alpha2);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("constants");
    w.key("config").begin_object();
    w.key("N").value(n_dim);
    w.key("alpha").value(alpha);
    w.key("alpha2").value(alpha2);
    w.end_object();
    w.key("result").begin_object();
    w.key("omega_N").value(rep.omega_n);
    w.key("s_alpha").value(rep.s_alpha);
    w.key("c_alpha_n").value(rep.c_alpha_n);
    w.key("threshold_single").value(rep.threshold_single);
    w.key("m_tilde").value(rep.m_tilde);
    w.key("threshold_double").value(rep.threshold_double);
    w.end_object();
    w.end_object();
    emit(common, "constants_N" + std::to_string(n_dim) + "_alpha" + num_tag(alpha),
         w.str());
    return kExitOk;
}

int cmd_solve(const ProblemParams& par, const GridOptions& gopts,
              const SolverOptions& sopts, const std::string& regime,
              const CommonOptions& common) {
    par.validate();
    if (!regime.empty()) {
        const std::string violation = check_regime(regime, par, gopts);
        if (!violation.empty()) {
            std::cerr << "regime claim rejected: " << violation << "\n";
            return kExitBadParams;
        }
    }
    auto grid = build_grid(gopts.r_max, gopts.n_cells, gopts.grading,
                           gopts.cell_rule);
    const GroundStateResult res = ground_state(par, grid, sopts);

    JsonWriter w;
    w.begin_object();
    w.key("command").value("solve");
    w.key("config").begin_object();
    echo_params(w, par);
    echo_grid(w, gopts);
    w.key("opts").begin_object();
    w.key("step").value(sopts.step);
    w.key("max_iter").value(sopts.max_iter);
    w.key("tol").value(sopts.tol);
    w.key("seed_eps").value(sopts.seed_eps);
    w.key("escape_mass_frac").value(sopts.escape_mass_frac);
    w.end_object();
    if (!regime.empty()) w.key("regime").value(regime);
    w.end_object();
    w.key("result").begin_object();
    w.key("status").value(to_string(res.status));
    w.key("message").value(res.message);
    w.key("m").value(res.m);
    w.key("iterations").value(res.iterations);
    w.key("grad_norm").value(res.grad_norm);
    w.key("el_residual").value(res.el_residual);
    w.key("threshold").value(res.threshold);
    w.key("below_threshold").value(res.below_threshold);
    w.key("pohozaev_residual").value(res.pohozaev);
    w.key("positive").value(res.positive);
    w.key("psi_residual").value(res.psi_residual);
    w.key("l2_mass_ratio").value(res.l2_mass_ratio);
    w.key("breakdown").begin_object();
    w.key("a").value(res.breakdown.a);
    w.key("b").value(res.breakdown.b);
    w.key("c").value(res.breakdown.c);
    w.key("d").value(res.breakdown.d);
    w.key("phi").value(res.breakdown.phi);
    w.key("nehari_residual").value(res.breakdown.nehari_residual);
    w.end_object();
    w.end_object();
    w.end_object();
    emit(common, "solve", w.str());
    if (!common.out_prefix.empty())
        write_profile_csv(common.out_prefix + "_solve_profile.csv", res.u);
    return res.status == SolveStatus::converged ? kExitOk : kExitNotConverged;
}

int cmd_eigen(int n_dim, double beta, const GridOptions& gopts,
              const CommonOptions& common) {
    auto grid = build_grid(gopts.r_max, gopts.n_cells, gopts.grading,
                           gopts.cell_rule);
    const EigenResult res = first_eigenpair(n_dim, beta, grid);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("eigen");
    w.key("config").begin_object();
    w.key("N").value(n_dim);
    w.key("beta").value(beta);
    echo_grid(w, gopts);
    w.end_object();
    w.key("result").begin_object();
    w.key("lambda1").value(res.lambda1);
    w.key("residual").value(res.residual);
    w.key("iterations").value(res.iterations);
    w.end_object();
    w.end_object();
    emit(common, "eigen_N" + std::to_string(n_dim) + "_beta" + num_tag(beta),
         w.str());
    if (!common.out_prefix.empty())
        write_profile_csv(common.out_prefix + "_eigenfunction.csv", res.phi1);
    return kExitOk;
}

int cmd_noncompact(int n_dim, double gamma_w, const std::vector<int>& k_list,
                   std::optional<double> q, const CommonOptions& common) {
    const NoncompactReport rep = noncompactness_report(n_dim, gamma_w, k_list, q);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("noncompact");
    w.key("config").begin_object();
    w.key("N").value(n_dim);
    w.key("gamma").value(gamma_w);
    w.key("k").begin_array();
    for (int k : k_list) w.value(k);
    w.end_array();
    w.key("q").value(rep.q);
    w.end_object();
    w.key("result").begin_object();
    w.key("growth_slope_fitted").value(rep.growth_slope_fitted);
    w.key("growth_slope_expected").value(rep.growth_slope_expected);
    w.key("max_rel_err_grad").value(rep.max_rel_err_grad);
    w.key("max_rel_err_l2").value(rep.max_rel_err_l2);
    w.key("max_rel_err_crit").value(rep.max_rel_err_crit);
    w.key("max_rel_err_q").value(rep.max_rel_err_q);
    w.key("rows").begin_array();
    for (const auto& r : rep.rows) {
        w.begin_object();
        w.key("k").value(r.k);
        w.key("grad_sq").value(r.grad_sq);
        w.key("grad_exact").value(r.grad_exact);
        w.key("l2_sq").value(r.l2_sq);
        w.key("l2_exact").value(r.l2_exact);
        w.key("crit_moment").value(r.crit_moment);
        w.key("crit_exact").value(r.crit_exact);
        w.key("q_moment").value(r.q_moment);
        w.key("q_exact").value(r.q_exact);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.end_object();
    const std::string stem =
        "noncompact_N" + std::to_string(n_dim) + "_gamma" + num_tag(gamma_w);
    emit(common, stem, w.str());
    if (!common.out_prefix.empty()) {
        std::string csv =
            "k,grad_sq,grad_exact,l2_sq,l2_exact,crit_moment,crit_exact,"
            "q_moment,q_exact\n";
        for (const auto& r : rep.rows)
            csv += std::to_string(r.k) + "," + format_g17(r.grad_sq) + "," +
                   format_g17(r.grad_exact) + "," + format_g17(r.l2_sq) + "," +
                   format_g17(r.l2_exact) + "," + format_g17(r.crit_moment) +
                   "," + format_g17(r.crit_exact) + "," +
                   format_g17(r.q_moment) + "," + format_g17(r.q_exact) + "\n";
        write_text_file(common.out_prefix + "_" + stem + ".csv", csv);
    }
    return kExitOk;
}

void fit_to_json(JsonWriter& w, const FitReport& r) {
    w.begin_object();
    w.key("quantity").value(r.quantity);
    w.key("fitted_slope").value(r.fitted_slope);
    w.key("expected_slope").value(r.expected_slope);
    w.key("slope_error").value(r.slope_error);
    w.key("r_squared").value(r.r_squared);
    w.key("log_corrected").value(r.log_corrected);
    w.key("log_expected").value(r.log_expected);
    w.key("sign").value(r.sign);
    w.key("eps").begin_array();
    for (double e : r.eps_values) w.value(e);
    w.end_array();
    w.key("measured").begin_array();
    for (double v : r.measured) w.value(v);
    w.end_array();
    w.end_object();
}

int cmd_asymptotics(const ProblemParams& par, const std::vector<double>& eps,
                    const CommonOptions& common) {
    const auto reports = bubble_asymptotics(par.n_dim, par.alpha1, par.beta,
                                            par.p, eps, par.alpha2, std::nullopt,
                                            common.jobs);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("asymptotics");
    w.key("config").begin_object();
    echo_params(w, par);
    w.key("eps").begin_array();
    for (double e : eps) w.value(e);
    w.end_array();
    w.key("jobs").value(common.jobs);
    w.end_object();
    w.key("result").begin_array();
    for (const auto& r : reports) fit_to_json(w, r);
    w.end_array();
    w.end_object();
    const std::string stem = "asymptotics_N" + std::to_string(par.n_dim) +
                             "_alpha" + num_tag(par.alpha1) + "_beta" +
                             num_tag(par.beta) + "_p" + num_tag(par.p);
    emit(common, stem, w.str());
    if (!common.out_prefix.empty()) {
        std::string csv = "quantity,eps,measured\n";
        for (const auto& r : reports)
            for (std::size_t i = 0; i < r.eps_values.size(); ++i)
                csv += r.quantity + "," + format_g17(r.eps_values[i]) + "," +
                       format_g17(r.measured[i]) + "\n";
        write_text_file(common.out_prefix + "_" + stem + ".csv", csv);
    }
    return kExitOk;
}

int cmd_audit(const ProblemParams& par, const GridOptions& gopts, double rel_tol,
              const CommonOptions& common) {
    par.validate();
    auto grid = build_grid(gopts.r_max, gopts.n_cells, gopts.grading,
                           gopts.cell_rule);
    const auto corpus = standard_corpus(grid, par.n_dim, par.alpha1);
    const AuditReport rep = inequality_audit(corpus, par, rel_tol);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("audit");
    w.key("config").begin_object();
    echo_params(w, par);
    echo_grid(w, gopts);
    w.key("rel_tol").value(rel_tol);
    w.end_object();
    w.key("result").begin_object();
    w.key("violations").value(rep.violations);
    w.key("min_rel_slack").value(rep.min_rel_slack);
    w.key("entries").begin_array();
    for (const auto& e : rep.entries) {
        w.begin_object();
        w.key("function").value(e.function);
        w.key("inequality").value(e.inequality);
        w.key("lhs").value(e.lhs);
        w.key("rhs").value(e.rhs);
        w.key("slack").value(e.slack);
        w.key("violated").value(e.violated);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.end_object();
    const std::string stem =
        "audit_N" + std::to_string(par.n_dim) + "_alpha" + num_tag(par.alpha1);
    emit(common, stem, w.str());
    if (!common.out_prefix.empty()) {
        std::string csv = "function,inequality,lhs,rhs,slack,violated\n";
        for (const auto& e : rep.entries)
            csv += e.function + "," + e.inequality + "," + format_g17(e.lhs) +
                   "," + format_g17(e.rhs) + "," + format_g17(e.slack) + "," +
                   (e.violated ? "1" : "0") + "\n";
        write_text_file(common.out_prefix + "_" + stem + ".csv", csv);
    }
    return kExitOk;
}

int cmd_escape(int n_dim, double alpha, const std::vector<double>& eps,
               const CommonOptions& common) {
    const auto rows = threshold_escape_demo(n_dim, alpha, eps);
    JsonWriter w;
    w.begin_object();
    w.key("command").value("escape-demo");
    w.key("config").begin_object();
    w.key("N").value(n_dim);
    w.key("alpha").value(alpha);
    w.key("eps").begin_array();
    for (double e : eps) w.value(e);
    w.end_array();
    w.end_object();
    w.key("result").begin_array();
    for (const auto& r : rows) {
        w.begin_object();
        w.key("eps").value(r.eps);
        w.key("fibering_max").value(r.fibering_max);
        w.key("threshold").value(r.threshold);
        w.key("gap").value(r.gap);
        w.key("l2_mass").value(r.l2_mass);
        w.key("mass_fraction").value(r.mass_fraction);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    const std::string stem =
        "escape_N" + std::to_string(n_dim) + "_alpha" + num_tag(alpha);
    emit(common, stem, w.str());
    if (!common.out_prefix.empty()) {
        std::string csv = "eps,fibering_max,threshold,gap,l2_mass,mass_fraction\n";
        for (const auto& r : rows)
            csv += format_g17(r.eps) + "," + format_g17(r.fibering_max) + "," +
                   format_g17(r.threshold) + "," + format_g17(r.gap) + "," +
                   format_g17(r.l2_mass) + "," + format_g17(r.mass_fraction) +
                   "\n";
        write_text_file(common.out_prefix + "_" + stem + ".csv", csv);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial ground states of critical Henon-type equations on R^N "
                 "via Nehari-manifold minimization"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI-style config file");

    CommonOptions common;
    app.add_option("--out", common.out_prefix,
                   "output file prefix (JSON/CSV artifacts)")
        ->configurable(true);
    app.add_option("--jobs", common.jobs, "parallel sweep evaluations");

    int n_dim = 3;
    double alpha = 1.0, beta = 0.0, p = 4.0, lambda = 1.0, gamma_w = 1.0;
    std::optional<double> alpha2, mu;
    GridOptions gopts;
    SolverOptions sopts;
    bool no_critical = false;
    std::string regime;
    std::vector<int> k_list{1, 4, 16, 64};
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
    std::optional<double> probe_q;
    double audit_tol = 1e-6;

    auto* c_const = app.add_subcommand("constants",
                                       "closed-form constants and thresholds");
    c_const->add_option("--N", n_dim)->required();
    c_const->add_option("--alpha", alpha)->required();
    c_const->add_option("--alpha2", alpha2);

    auto* c_solve = app.add_subcommand("solve", "compute a radial ground state");
    c_solve->add_option("--N", n_dim)->required();
    c_solve->add_option("--alpha", alpha)->required();
    c_solve->add_option("--alpha2", alpha2);
    c_solve->add_option("--beta", beta);
    c_solve->add_option("--p", p);
    c_solve->add_option("--lambda", lambda);
    c_solve->add_option("--mu", mu);
    c_solve->add_flag("--no-critical", no_critical,
                      "drop the critical term (subcritical benchmark)");
    c_solve->add_option("--regime", regime,
                        "claimed existence regime: 3.1i|3.1ii|3.1iii|4.3|4.7i|4.7ii|4.7iii");
    add_grid_options(c_solve, gopts);
    c_solve->add_option("--step", sopts.step);
    c_solve->add_option("--max-iter", sopts.max_iter);
    c_solve->add_option("--tol", sopts.tol);
    c_solve->add_option("--seed-eps", sopts.seed_eps);
    c_solve->add_option("--escape-frac", sopts.escape_mass_frac);

    auto* c_eigen = app.add_subcommand("eigen", "first weighted eigenpair");
    c_eigen->add_option("--N", n_dim)->required();
    c_eigen->add_option("--beta", beta)->required();
    add_grid_options(c_eigen, gopts);

    auto* c_nc = app.add_subcommand("noncompact",
                                    "concentrating Gaussian closed-form table");
    c_nc->add_option("--N", n_dim)->required();
    c_nc->add_option("--gamma", gamma_w)->required();
    c_nc->add_option("--k", k_list, "comma separated k values")->delimiter(',');
    c_nc->add_option("--q", probe_q, "supercritical probe exponent");

    auto* c_as = app.add_subcommand("asymptotics",
                                    "cutoff-bubble asymptotic order sweep");
    c_as->add_option("--N", n_dim)->required();
    c_as->add_option("--alpha", alpha)->required();
    c_as->add_option("--alpha2", alpha2);
    c_as->add_option("--beta", beta);
    c_as->add_option("--p", p);
    c_as->add_option("--eps", eps_list, "comma separated eps sweep")->delimiter(',');

    auto* c_audit = app.add_subcommand("audit",
                                       "inequality audit over the standard corpus");
    c_audit->add_option("--N", n_dim)->required();
    c_audit->add_option("--alpha", alpha)->required();
    c_audit->add_option("--alpha2", alpha2);
    c_audit->add_option("--mu", mu);
    c_audit->add_option("--beta", beta);
    c_audit->add_option("--p", p);
    c_audit->add_option("--lambda", lambda);
    c_audit->add_option("--rel-tol", audit_tol);
    add_grid_options(c_audit, gopts);

    auto* c_esc = app.add_subcommand("escape-demo",
                                     "lambda = 0 threshold-escape sweep");
    c_esc->add_option("--N", n_dim)->required();
    c_esc->add_option("--alpha", alpha)->required();
    c_esc->add_option("--eps", eps_list, "comma separated eps sweep")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_const->parsed()) return cmd_constants(n_dim, alpha, alpha2, common);
        if (c_solve->parsed()) {
            ProblemParams par;
            par.n_dim = n_dim;
            par.alpha1 = alpha;
            par.alpha2 = alpha2;
            par.beta = beta;
            par.p = p;
            par.lambda = lambda;
            par.mu = mu;
            par.critical_coeff = no_critical ? 0.0 : 1.0;
            return cmd_solve(par, gopts, sopts, regime, common);
        }
        if (c_eigen->parsed()) return cmd_eigen(n_dim, beta, gopts, common);
        if (c_nc->parsed())
            return cmd_noncompact(n_dim, gamma_w, k_list, probe_q, common);
        if (c_as->parsed()) {
            ProblemParams par;
            par.n_dim = n_dim;
            par.alpha1 = alpha;
            par.alpha2 = alpha2;
            par.beta = beta;
            par.p = p;
            par.lambda = lambda;
            if (alpha2) par.mu = 1.0;
            par.validate();
            return cmd_asymptotics(par, eps_list, common);
        }
        if (c_audit->parsed()) {
            ProblemParams par;
            par.n_dim = n_dim;
            par.alpha1 = alpha;
            par.alpha2 = alpha2;
            par.beta = beta;
            par.p = p;
            par.lambda = lambda;
            par.mu = mu;
            if (alpha2 && !mu) par.mu = 1.0;
            return cmd_audit(par, gopts, audit_tol, common);
        }
        if (c_esc->parsed()) return cmd_escape(n_dim, alpha, eps_list, common);
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter rejected: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const std::domain_error& e) {
        std::cerr << "parameter rejected: " << e.what() << "\n";
        return kExitBadParams;
    } catch (const FiberingError& e) {
        std::cerr << "degenerate fibering: " << e.what() << "\n";
        return kExitNotConverged;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
