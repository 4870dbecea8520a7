#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "henon/energy.hpp"
#include "henon/experiments.hpp"
#include "henon/io.hpp"
#include "henon/solver.hpp"
#include "henon/space.hpp"
#include "henon/special.hpp"

namespace py = pybind11;
using namespace henon;

namespace {

std::optional<GridSpec> grid_spec_from(double r_max, int n_cells, double grading,
                                       int cell_rule) {
    if (r_max <= 0.0) return std::nullopt;
    return GridSpec{r_max, n_cells, grading, cell_rule};
}

}  // namespace

PYBIND11_MODULE(_henon, m) {
    m.doc() = "Radial ground states of critical Henon-type equations via "
              "Nehari-manifold minimization";

    py::register_exception<FiberingError>(m, "FiberingError", PyExc_RuntimeError);

    // --- constants -------------------------------------------------------
    py::class_<ExponentPair>(m, "ExponentPair")
        .def_readonly("upper", &ExponentPair::upper)
        .def_readonly("lower", &ExponentPair::lower)
        .def("__repr__", [](const ExponentPair& e) {
            return "ExponentPair(upper=" + format_g17(e.upper) +
                   ", lower=" + format_g17(e.lower) + ")";
        });

    py::class_<ConstantsReport>(m, "ConstantsReport")
        .def_readonly("omega_N", &ConstantsReport::omega_n)
        .def_readonly("s_alpha", &ConstantsReport::s_alpha)
        .def_readonly("c_alpha_n", &ConstantsReport::c_alpha_n)
        .def_readonly("threshold_single", &ConstantsReport::threshold_single)
        .def_readonly("m_tilde", &ConstantsReport::m_tilde)
        .def_readonly("threshold_double", &ConstantsReport::threshold_double)
        .def("to_json", [](const ConstantsReport& r) { return to_json(r); });

    m.def("gamma_fn", &gamma_fn, py::arg("x"));
    m.def("sphere_area", &sphere_area, py::arg("n_dim"));
    m.def("crit_exponents", &crit_exponents, py::arg("n_dim"), py::arg("gamma"));
    m.def("upper_critical", &upper_critical, py::arg("n_dim"), py::arg("gamma"));
    m.def("lower_critical", &lower_critical, py::arg("n_dim"), py::arg("gamma"));
    m.def("best_constant", &best_constant, py::arg("n_dim"), py::arg("alpha"));
    m.def("sobolev_constant", &sobolev_constant, py::arg("n_dim"));
    m.def("bubble_coefficient", &bubble_coefficient, py::arg("n_dim"),
          py::arg("alpha"));
    m.def("ps_threshold_single", &ps_threshold_single, py::arg("n_dim"),
          py::arg("alpha"));
    m.def("m_tilde", &m_tilde, py::arg("n_dim"), py::arg("alpha1"),
          py::arg("alpha2"));
    m.def("m_tilde_residual", &m_tilde_residual, py::arg("n_dim"),
          py::arg("alpha1"), py::arg("alpha2"), py::arg("t"));
    m.def("ps_threshold_double", &ps_threshold_double, py::arg("n_dim"),
          py::arg("alpha1"), py::arg("alpha2"));
    m.def(
        "constants_report",
        [](int n_dim, double alpha, std::optional<double> alpha2) {
            return constants_report(n_dim, alpha, alpha2);
        },
        py::arg("n_dim"), py::arg("alpha"), py::arg("alpha2") = py::none());

    // --- grid ------------------------------------------------------------
    py::class_<RadialGrid, std::shared_ptr<RadialGrid>>(m, "RadialGrid")
        .def_property_readonly("r_max", &RadialGrid::r_max)
        .def_property_readonly("n_cells", &RadialGrid::n_cells)
        .def_property_readonly("grading", &RadialGrid::grading)
        .def_property_readonly("cell_rule", &RadialGrid::cell_rule)
        .def_property_readonly("nodes", [](const RadialGrid& g) { return g.nodes(); })
        .def_property_readonly("points",
                               [](const RadialGrid& g) { return g.points(); });

    m.def(
        "build_grid",
        [](double r_max, int n_cells, double grading, int cell_rule) {
            return std::const_pointer_cast<RadialGrid>(
                build_grid(r_max, n_cells, grading, cell_rule));
        },
        py::arg("r_max"), py::arg("n_cells"), py::arg("grading") = 1.0,
        py::arg("cell_rule") = 8);
    m.def(
        "weighted_integral",
        [](std::shared_ptr<RadialGrid> grid, int n_dim, double gamma,
           const std::function<double(double)>& g) {
            return weighted_integral(*grid, n_dim, gamma, g);
        },
        py::arg("grid"), py::arg("n_dim"), py::arg("gamma"), py::arg("g"));

    // --- space -----------------------------------------------------------
    py::class_<RadialFunction>(m, "RadialFunction")
        .def_readonly("node_values", &RadialFunction::node_values)
        .def_readonly("values", &RadialFunction::values)
        .def_readonly("derivs", &RadialFunction::derivs)
        .def_property_readonly("grid",
                               [](const RadialFunction& u) {
                                   return std::const_pointer_cast<RadialGrid>(u.grid);
                               })
        .def("h1_norm_sq", &h1_norm_sq, py::arg("n_dim"))
        .def("d12_seminorm_sq", &d12_seminorm_sq, py::arg("n_dim"))
        .def("l2_norm_sq", &l2_norm_sq, py::arg("n_dim"));

    const auto cgrid = [](std::shared_ptr<RadialGrid> g) {
        return std::shared_ptr<const RadialGrid>(std::move(g));
    };
    m.def(
        "sample_profile",
        [cgrid](std::shared_ptr<RadialGrid> grid,
                const std::function<double(double)>& f,
                const std::function<double(double)>& dfdr) {
            return sample_profile(cgrid(grid), f, dfdr);
        },
        py::arg("grid"), py::arg("f"), py::arg("dfdr"));
    m.def(
        "from_node_values",
        [cgrid](std::shared_ptr<RadialGrid> grid, std::vector<double> nodal) {
            return from_node_values(cgrid(grid), std::move(nodal));
        },
        py::arg("grid"), py::arg("node_values"));
    m.def(
        "bubble",
        [cgrid](std::shared_ptr<RadialGrid> grid, int n_dim, double alpha,
                double eps) { return bubble(cgrid(grid), n_dim, alpha, eps); },
        py::arg("grid"), py::arg("n_dim"), py::arg("alpha"), py::arg("eps"));
    m.def(
        "cutoff_bubble",
        [cgrid](std::shared_ptr<RadialGrid> grid, int n_dim, double alpha,
                double eps, double r_inner) {
            return cutoff_bubble(cgrid(grid), n_dim, alpha, eps, r_inner);
        },
        py::arg("grid"), py::arg("n_dim"), py::arg("alpha"), py::arg("eps"),
        py::arg("r_inner"));
    m.def(
        "gaussian_seq",
        [cgrid](std::shared_ptr<RadialGrid> grid, int n_dim, double gamma, int k) {
            return gaussian_seq(cgrid(grid), n_dim, gamma, k);
        },
        py::arg("grid"), py::arg("n_dim"), py::arg("gamma"), py::arg("k"));
    m.def("h1_norm_sq", &h1_norm_sq, py::arg("u"), py::arg("n_dim"));
    m.def("weighted_lp", &weighted_lp, py::arg("u"), py::arg("n_dim"),
          py::arg("gamma"), py::arg("q"));
    m.def(
        "riesz_gradient",
        [cgrid](std::shared_ptr<RadialGrid> grid, int n_dim,
                std::vector<double> action) {
            return riesz_gradient(cgrid(grid), n_dim, action);
        },
        py::arg("grid"), py::arg("n_dim"), py::arg("action_on_basis"));

    // --- energy ----------------------------------------------------------
    py::class_<ProblemParams>(m, "ProblemParams")
        .def(py::init([](int n_dim, double alpha, std::optional<double> alpha2,
                         double beta, double p, double lambda,
                         std::optional<double> mu, double critical_coeff) {
                 ProblemParams pp;
                 pp.n_dim = n_dim;
                 pp.alpha1 = alpha;
                 pp.alpha2 = alpha2;
                 pp.beta = beta;
                 pp.p = p;
                 pp.lambda = lambda;
                 pp.mu = mu;
                 pp.critical_coeff = critical_coeff;
                 pp.validate();
                 return pp;
             }),
             py::arg("n_dim"), py::arg("alpha"), py::arg("alpha2") = py::none(),
             py::arg("beta") = 0.0, py::arg("p") = 4.0, py::arg("lambda") = 1.0,
             py::arg("mu") = py::none(), py::arg("critical_coeff") = 1.0)
        .def_readonly("n_dim", &ProblemParams::n_dim)
        .def_readonly("alpha", &ProblemParams::alpha1)
        .def_readonly("alpha2", &ProblemParams::alpha2)
        .def_readonly("beta", &ProblemParams::beta)
        .def_readonly("p", &ProblemParams::p)
        .def_readonly("lambda_", &ProblemParams::lambda)
        .def_readonly("mu", &ProblemParams::mu)
        .def_readonly("critical_coeff", &ProblemParams::critical_coeff);

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("a", &EnergyBreakdown::a)
        .def_readonly("b", &EnergyBreakdown::b)
        .def_readonly("c", &EnergyBreakdown::c)
        .def_readonly("d", &EnergyBreakdown::d)
        .def_readonly("phi", &EnergyBreakdown::phi)
        .def_readonly("nehari_residual", &EnergyBreakdown::nehari_residual)
        .def("to_json", [](const EnergyBreakdown& b) { return to_json(b); });

    m.def("energy", &energy, py::arg("u"), py::arg("params"));
    m.def("derivative_action", &derivative_action, py::arg("u"), py::arg("v"),
          py::arg("params"));
    m.def("nehari_value", &nehari_value, py::arg("u"), py::arg("params"));
    m.def("nehari_scale", &nehari_scale, py::arg("u"), py::arg("params"));
    m.def("nehari_regularity", &nehari_regularity, py::arg("u"), py::arg("params"));
    m.def("fibering_max", &fibering_max, py::arg("u"), py::arg("params"));

    // --- solver ----------------------------------------------------------
    py::enum_<SolveStatus>(m, "SolveStatus")
        .value("converged", SolveStatus::converged)
        .value("stalled", SolveStatus::stalled)
        .value("vanishing_escape", SolveStatus::vanishing_escape)
        .value("degenerate_fibering", SolveStatus::degenerate_fibering);

    py::class_<GroundStateResult>(m, "GroundStateResult")
        .def_readonly("u", &GroundStateResult::u)
        .def_readonly("m", &GroundStateResult::m)
        .def_readonly("iterations", &GroundStateResult::iterations)
        .def_readonly("grad_norm", &GroundStateResult::grad_norm)
        .def_readonly("el_residual", &GroundStateResult::el_residual)
        .def_readonly("threshold", &GroundStateResult::threshold)
        .def_readonly("below_threshold", &GroundStateResult::below_threshold)
        .def_readonly("pohozaev", &GroundStateResult::pohozaev)
        .def_readonly("positive", &GroundStateResult::positive)
        .def_readonly("psi_residual", &GroundStateResult::psi_residual)
        .def_readonly("l2_mass_ratio", &GroundStateResult::l2_mass_ratio)
        .def_readonly("breakdown", &GroundStateResult::breakdown)
        .def_readonly("status", &GroundStateResult::status)
        .def_readonly("message", &GroundStateResult::message);

    m.def(
        "ground_state",
        [](const ProblemParams& params, std::shared_ptr<RadialGrid> grid,
           double step, int max_iter, double tol,
           std::optional<RadialFunction> seed, double seed_eps,
           double escape_mass_frac) {
            SolverOptions opts;
            opts.step = step;
            opts.max_iter = max_iter;
            opts.tol = tol;
            opts.seed_profile = std::move(seed);
            opts.seed_eps = seed_eps;
            opts.escape_mass_frac = escape_mass_frac;
            return ground_state(
                params, std::shared_ptr<const RadialGrid>(std::move(grid)), opts);
        },
        py::arg("params"), py::arg("grid"), py::arg("step") = 1.0,
        py::arg("max_iter") = 20000, py::arg("tol") = 1e-8,
        py::arg("seed") = py::none(), py::arg("seed_eps") = 1.0,
        py::arg("escape_mass_frac") = 1e-8,
        py::call_guard<py::gil_scoped_release>());

    py::class_<EigenResult>(m, "EigenResult")
        .def_readonly("lambda1", &EigenResult::lambda1)
        .def_readonly("phi1", &EigenResult::phi1)
        .def_readonly("residual", &EigenResult::residual)
        .def_readonly("iterations", &EigenResult::iterations);

    m.def(
        "first_eigenpair",
        [](int n_dim, double beta, std::shared_ptr<RadialGrid> grid, double tol) {
            return first_eigenpair(
                n_dim, beta, std::shared_ptr<const RadialGrid>(std::move(grid)),
                tol);
        },
        py::arg("n_dim"), py::arg("beta"), py::arg("grid"), py::arg("tol") = 1e-10);

    m.def("pohozaev_residual", &pohozaev_residual, py::arg("u"), py::arg("n_dim"),
          py::arg("alpha"));
    m.def("euler_lagrange_residual", &euler_lagrange_residual, py::arg("u"),
          py::arg("params"));

    // --- experiments -----------------------------------------------------
    py::class_<FitReport>(m, "FitReport")
        .def_readonly("quantity", &FitReport::quantity)
        .def_readonly("eps_values", &FitReport::eps_values)
        .def_readonly("measured", &FitReport::measured)
        .def_readonly("fitted_slope", &FitReport::fitted_slope)
        .def_readonly("expected_slope", &FitReport::expected_slope)
        .def_readonly("slope_error", &FitReport::slope_error)
        .def_readonly("r_squared", &FitReport::r_squared)
        .def_readonly("log_corrected", &FitReport::log_corrected)
        .def_readonly("sign", &FitReport::sign);

    py::class_<NoncompactRow>(m, "NoncompactRow")
        .def_readonly("k", &NoncompactRow::k)
        .def_readonly("grad_sq", &NoncompactRow::grad_sq)
        .def_readonly("grad_exact", &NoncompactRow::grad_exact)
        .def_readonly("l2_sq", &NoncompactRow::l2_sq)
        .def_readonly("l2_exact", &NoncompactRow::l2_exact)
        .def_readonly("crit_moment", &NoncompactRow::crit_moment)
        .def_readonly("crit_exact", &NoncompactRow::crit_exact)
        .def_readonly("q_moment", &NoncompactRow::q_moment)
        .def_readonly("q_exact", &NoncompactRow::q_exact);

    py::class_<NoncompactReport>(m, "NoncompactReport")
        .def_readonly("n_dim", &NoncompactReport::n_dim)
        .def_readonly("gamma", &NoncompactReport::gamma_w)
        .def_readonly("q", &NoncompactReport::q)
        .def_readonly("rows", &NoncompactReport::rows)
        .def_readonly("growth_slope_fitted", &NoncompactReport::growth_slope_fitted)
        .def_readonly("growth_slope_expected",
                      &NoncompactReport::growth_slope_expected)
        .def_readonly("max_rel_err_grad", &NoncompactReport::max_rel_err_grad)
        .def_readonly("max_rel_err_l2", &NoncompactReport::max_rel_err_l2)
        .def_readonly("max_rel_err_crit", &NoncompactReport::max_rel_err_crit)
        .def_readonly("max_rel_err_q", &NoncompactReport::max_rel_err_q);

    m.def(
        "noncompactness_report",
        [](int n_dim, double gamma, std::vector<int> k_list,
           std::optional<double> q) {
            return noncompactness_report(n_dim, gamma, k_list, q);
        },
        py::arg("n_dim"), py::arg("gamma"), py::arg("k_list"),
        py::arg("q") = py::none(), py::call_guard<py::gil_scoped_release>());

    m.def(
        "bubble_asymptotics",
        [](int n_dim, double alpha, double beta, double p,
           std::vector<double> eps_list, std::optional<double> alpha2, int jobs) {
            return bubble_asymptotics(n_dim, alpha, beta, p, eps_list, alpha2,
                                      std::nullopt, jobs);
        },
        py::arg("n_dim"), py::arg("alpha"), py::arg("beta"), py::arg("p"),
        py::arg("eps_list"), py::arg("alpha2") = py::none(), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.def("bubble_rayleigh_quotient",
          [](int n_dim, double alpha, double eps, double r_max, int n_cells,
             double grading, int cell_rule) {
              return bubble_rayleigh_quotient(
                  n_dim, alpha, eps,
                  grid_spec_from(r_max, n_cells, grading, cell_rule));
          },
          py::arg("n_dim"), py::arg("alpha"), py::arg("eps"),
          py::arg("r_max") = 0.0, py::arg("n_cells") = 0,
          py::arg("grading") = 1.0, py::arg("cell_rule") = 8,
          py::call_guard<py::gil_scoped_release>());

    py::class_<AuditEntry>(m, "AuditEntry")
        .def_readonly("function", &AuditEntry::function)
        .def_readonly("inequality", &AuditEntry::inequality)
        .def_readonly("lhs", &AuditEntry::lhs)
        .def_readonly("rhs", &AuditEntry::rhs)
        .def_readonly("slack", &AuditEntry::slack)
        .def_readonly("violated", &AuditEntry::violated);

    py::class_<AuditReport>(m, "AuditReport")
        .def_readonly("entries", &AuditReport::entries)
        .def_readonly("violations", &AuditReport::violations)
        .def_readonly("min_rel_slack", &AuditReport::min_rel_slack);

    m.def(
        "inequality_audit_standard",
        [cgrid](std::shared_ptr<RadialGrid> grid, const ProblemParams& params,
                double rel_tol) {
            const auto corpus =
                standard_corpus(cgrid(grid), params.n_dim, params.alpha1);
            return inequality_audit(corpus, params, rel_tol);
        },
        py::arg("grid"), py::arg("params"), py::arg("rel_tol") = 1e-6,
        py::call_guard<py::gil_scoped_release>());

    py::class_<EscapeRow>(m, "EscapeRow")
        .def_readonly("eps", &EscapeRow::eps)
        .def_readonly("fibering_max", &EscapeRow::fibering_max)
        .def_readonly("threshold", &EscapeRow::threshold)
        .def_readonly("gap", &EscapeRow::gap)
        .def_readonly("l2_mass", &EscapeRow::l2_mass)
        .def_readonly("mass_fraction", &EscapeRow::mass_fraction);

    m.def(
        "threshold_escape_demo",
        [](int n_dim, double alpha, std::vector<double> eps_list) {
            return threshold_escape_demo(n_dim, alpha, eps_list);
        },
        py::arg("n_dim"), py::arg("alpha"), py::arg("eps_list"),
        py::call_guard<py::gil_scoped_release>());

#ifdef HENON_VERSION
    m.attr("__version__") = HENON_VERSION;
#else
    m.attr("__version__") = "0.1.0";
#endif
}
