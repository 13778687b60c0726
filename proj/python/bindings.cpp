#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spl/cli.hpp"
#include "spl/extremal.hpp"
#include "spl/json_io.hpp"
#include "spl/mellin.hpp"
#include "spl/obrechkoff.hpp"
#include "spl/poly.hpp"
#include "spl/potential.hpp"
#include "spl/quadrature.hpp"
#include "spl/version.hpp"

namespace py = pybind11;
using namespace spl;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Logarithmic potentials of planar measures, sector-mass inequalities, "
              "and extremal measures";
    m.attr("__version__") = version;

    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_RuntimeError);
    py::register_exception<QuadratureMismatch>(m, "QuadratureMismatch", PyExc_RuntimeError);
    py::register_exception<IllConditioned>(m, "IllConditioned", PyExc_RuntimeError);
    py::register_exception<UnboundedSupport>(m, "UnboundedSupport", PyExc_ValueError);

    // ---- quadrature ----
    py::class_<QuadratureSpec>(m, "QuadratureSpec")
        .def(py::init<>())
        .def(py::init([](double abs_tol, double rel_tol, int max_subdivisions) {
                 return QuadratureSpec{abs_tol, rel_tol, max_subdivisions};
             }),
             py::arg("abs_tol") = 1e-10, py::arg("rel_tol") = 1e-10,
             py::arg("max_subdivisions") = 2000)
        .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
        .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
        .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions);
    m.def("integrate", &integrate, py::arg("f"), py::arg("lo"), py::arg("hi"),
          py::arg("spec") = QuadratureSpec::identities(),
          "Adaptive Gauss-Kronrod integral of f over [lo, hi]");
    m.def("integrate_halfline", &integrate_halfline, py::arg("f"),
          py::arg("spec") = QuadratureSpec::improper(),
          "Improper integral over [0, inf) via r = s/(1-s)");

    // ---- measure ----
    py::class_<Atom>(m, "Atom")
        .def(py::init([](complex location, double mass) { return Atom{location, mass}; }),
             py::arg("location"), py::arg("mass"))
        .def_readonly("location", &Atom::location)
        .def_readonly("mass", &Atom::mass)
        .def("__repr__", [](const Atom& a) {
            return "Atom(location=(" + std::to_string(a.location.real()) + "," +
                   std::to_string(a.location.imag()) + "), mass=" + std::to_string(a.mass) + ")";
        });
    py::class_<UniformCircle>(m, "UniformCircle")
        .def(py::init([](double radius, double mass) { return UniformCircle{radius, mass}; }),
             py::arg("radius"), py::arg("mass"))
        .def_readonly("radius", &UniformCircle::radius)
        .def_readonly("mass", &UniformCircle::mass);
    py::class_<ExtremalTail>(m, "ExtremalTail")
        .def(py::init([](double alpha, double mass_scale) {
                 return ExtremalTail{alpha, mass_scale};
             }),
             py::arg("alpha"), py::arg("mass_scale") = 1.0)
        .def_readonly("alpha", &ExtremalTail::alpha)
        .def_readonly("mass_scale", &ExtremalTail::mass_scale);

    py::class_<SectorMassFunction>(m, "SectorMassFunction")
        .def("__call__", &SectorMassFunction::operator())
        .def("integral", &SectorMassFunction::integral, py::arg("a"),
             "int_0^a m(t) dt, exact")
        .def("total", &SectorMassFunction::total);

    py::class_<Measure>(m, "Measure")
        .def(py::init([](const std::vector<py::object>& items) {
                 std::vector<Component> comps;
                 for (const auto& item : items) {
                     if (py::isinstance<Atom>(item)) comps.push_back(item.cast<Atom>());
                     else if (py::isinstance<UniformCircle>(item))
                         comps.push_back(item.cast<UniformCircle>());
                     else if (py::isinstance<ExtremalTail>(item))
                         comps.push_back(item.cast<ExtremalTail>());
                     else throw py::type_error("Measure: unsupported component type");
                 }
                 return Measure(std::move(comps));
             }),
             py::arg("components"))
        .def_static("from_json", &measure_from_json, py::arg("text"),
                    "Parse the strict JSON measure spec")
        .def("to_json", &measure_to_json)
        .def("total_mass", &Measure::total_mass)
        .def("sector_mass", &Measure::sector_mass, py::arg("t"),
             "Mass of the closed double sector {|Arg z| <= t}")
        .def("angular_projection", &Measure::angular_projection,
             py::return_value_policy::reference_internal)
        .def("arc_mass", &Measure::arc_mass, py::arg("lo"), py::arg("hi"))
        .def("check_symmetry", py::overload_cast<double>(&Measure::check_symmetry, py::const_),
             py::arg("tol"))
        .def("check_symmetry", py::overload_cast<>(&Measure::check_symmetry, py::const_))
        .def("is_atomic", &Measure::is_atomic)
        .def("atoms", &Measure::atoms);

    // ---- poly ----
    py::class_<PositivePolynomial>(m, "PositivePolynomial")
        .def(py::init<std::vector<double>>(), py::arg("coefficients"))
        .def_property_readonly("coefficients", &PositivePolynomial::coefficients)
        .def_property_readonly("degree", &PositivePolynomial::degree)
        .def("__call__", &PositivePolynomial::eval, py::arg("z"));
    py::class_<RootSet>(m, "RootSet")
        .def_readonly("roots", &RootSet::roots)
        .def_readonly("residual_bound", &RootSet::residual_bound);
    m.def("find_roots", &find_roots, py::arg("p"), py::arg("tol") = 1e-12);
    m.def("empirical_measure", &empirical_measure, py::arg("p"),
          "Probability measure with mass m/d at each root of multiplicity m");
    m.def("check_modulus_bound", &check_modulus_bound, py::arg("p"), py::arg("sample_count"),
          py::arg("seed"));
    py::enum_<PolyFamily>(m, "PolyFamily")
        .value("binomial_d", PolyFamily::binomial_d)
        .value("random_loguniform", PolyFamily::random_loguniform);
    m.def("make_family", &make_family, py::arg("kind"), py::arg("d"), py::arg("seed"));

    // ---- potential ----
    py::class_<MajorizationReport>(m, "MajorizationReport")
        .def_readonly("worst_slack", &MajorizationReport::worst_slack)
        .def_readonly("worst_point", &MajorizationReport::worst_point)
        .def_readonly("grid_size", &MajorizationReport::grid_size)
        .def_readonly("passed", &MajorizationReport::passed)
        .def_readonly("tolerance", &MajorizationReport::tolerance);
    m.def("log_potential", &log_potential, py::arg("m"), py::arg("z"));
    m.def("normalized_potential", &normalized_potential, py::arg("m"), py::arg("z"));
    m.def(
        "check_radial_majorization",
        [](const Measure& mu, std::vector<double> r_grid, std::vector<double> theta_grid,
           double tol) { return check_radial_majorization(mu, r_grid, theta_grid, tol); },
        py::arg("m"), py::arg("r_grid"), py::arg("theta_grid"), py::arg("tol") = 1e-9);
    m.def(
        "check_radial_majorization",
        [](const Measure& mu, double tol) { return check_radial_majorization(mu, tol); },
        py::arg("m"), py::arg("tol") = 1e-9, "Default 64 x 128 grid");

    // ---- obrechkoff ----
    py::class_<KernelParams>(m, "KernelParams")
        .def(py::init([](double a) { return KernelParams{a}; }), py::arg("a"))
        .def_readonly("a", &KernelParams::a);
    py::class_<InequalityReport>(m, "InequalityReport")
        .def_readonly("a_grid", &InequalityReport::a_grid)
        .def_readonly("lhs", &InequalityReport::lhs)
        .def_readonly("rhs", &InequalityReport::rhs)
        .def_readonly("worst_margin", &InequalityReport::worst_margin)
        .def_readonly("worst_a", &InequalityReport::worst_a)
        .def_readonly("passed", &InequalityReport::passed)
        .def_readonly("tolerance", &InequalityReport::tolerance)
        .def_readonly("hypothesis_violations", &InequalityReport::hypothesis_violations);
    py::class_<ChainReport>(m, "ChainReport")
        .def_readonly("alpha", &ChainReport::alpha)
        .def_property_readonly("values",
                               [](const ChainReport& r) {
                                   return std::vector<double>(r.values, r.values + 4);
                               })
        .def_property_readonly("margins",
                               [](const ChainReport& r) {
                                   return std::vector<double>(r.margins, r.margins + 3);
                               })
        .def_readonly("passed", &ChainReport::passed);
    m.def("averaged_mass", &averaged_mass, py::arg("m"), py::arg("a"),
          "(1/a) int_0^a m(t) dt");
    m.def(
        "check_theorem1",
        [](const Measure& mu, std::vector<double> a_grid, double tol) {
            return check_theorem1(mu, a_grid, tol);
        },
        py::arg("m"), py::arg("a_grid"), py::arg("tol") = 1e-9);
    m.def(
        "check_obrechkoff",
        [](const Measure& mu, std::vector<double> alpha_grid, double tol) {
            return check_obrechkoff(mu, alpha_grid, tol);
        },
        py::arg("m"), py::arg("alpha_grid"), py::arg("tol") = 1e-9);
    m.def("check_chain", &check_chain, py::arg("m"), py::arg("alpha"), py::arg("tol") = 1e-9);
    m.def("kernel_J", &kernel_J, py::arg("t"), py::arg("params"));
    m.def("j_functional", &j_functional, py::arg("m"), py::arg("params"));
    m.def("ibp_identity_check", &ibp_identity_check, py::arg("m"), py::arg("params"),
          py::arg("tol") = 1e-10);
    m.def("make_a_grid", &make_a_grid, py::arg("n"));

    // ---- mellin ----
    py::class_<RhoParams>(m, "RhoParams")
        .def(py::init([](double rho) { return RhoParams{rho}; }), py::arg("rho"))
        .def_readonly("rho", &RhoParams::rho);
    py::class_<AngularMeasure>(m, "AngularMeasure")
        .def_property_readonly("atoms",
                               [](const AngularMeasure& nu) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& a : nu.atoms)
                                       out.emplace_back(a.angle, a.weight);
                                   return out;
                               })
        .def("total_weight", &AngularMeasure::total_weight);
    py::enum_<MellinMode>(m, "MellinMode")
        .value("closed_form", MellinMode::closed_form)
        .value("quadrature", MellinMode::quadrature);
    m.def("c_rho", &c_rho, py::arg("p"));
    m.def("phi_rho", &phi_rho, py::arg("theta"), py::arg("p"));
    m.def("mellin_log_integral", &mellin_log_integral, py::arg("z"), py::arg("p"), py::arg("mode"));
    m.def("nu_rho", &nu_rho, py::arg("m"), py::arg("p"));
    m.def("h_rho", py::overload_cast<const Measure&, double, RhoParams>(&h_rho), py::arg("m"),
          py::arg("theta"), py::arg("p"));
    m.def("v_rho_numeric", &v_rho_numeric, py::arg("m"), py::arg("z"), py::arg("p"));
    m.def("j_rho_kernel", &j_rho_kernel, py::arg("t"), py::arg("a"), py::arg("p"));
    m.def("concavity_difference", &concavity_difference, py::arg("m"), py::arg("a"), py::arg("p"));
    m.def("kernel_limit", &kernel_limit, py::arg("t"), py::arg("a"));
    py::class_<LimitFit>(m, "LimitFit")
        .def_readonly("kappa", &LimitFit::kappa)
        .def_readonly("max_residual", &LimitFit::max_residual)
        .def_readonly("max_kernel", &LimitFit::max_kernel);
    m.def(
        "limit_factor_estimate",
        [](double a, std::vector<double> t_grid) { return limit_factor_estimate(a, t_grid); },
        py::arg("a"), py::arg("t_grid"));

    // ---- extremal ----
    py::class_<ExtremalSpec>(m, "ExtremalSpec")
        .def(py::init([](double alpha) { return ExtremalSpec{alpha}; }), py::arg("alpha"))
        .def_readonly("alpha", &ExtremalSpec::alpha);
    py::class_<LambdaMasses>(m, "LambdaMasses")
        .def_readonly("atom_mass_each", &LambdaMasses::atom_mass_each)
        .def_readonly("sector_mass", &LambdaMasses::sector_mass)
        .def_readonly("sector_mass_quadrature", &LambdaMasses::sector_mass_quadrature)
        .def_readonly("total", &LambdaMasses::total);
    py::class_<CheckResult>(m, "CheckResult")
        .def_readonly("name", &CheckResult::name)
        .def_readonly("value", &CheckResult::value)
        .def_readonly("threshold", &CheckResult::threshold)
        .def_readonly("worst_location", &CheckResult::worst_location)
        .def_readonly("passed", &CheckResult::passed);
    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("checks", &VerificationReport::checks)
        .def_readonly("tolerance", &VerificationReport::tolerance)
        .def_readonly("passed", &VerificationReport::passed);
    m.def("base_potential", &base_potential, py::arg("z"));
    m.def("u_alpha", &u_alpha, py::arg("z"), py::arg("spec"));
    m.def("rho_alpha", &rho_alpha, py::arg("r"), py::arg("spec"));
    m.def("lambda_alpha_masses", &lambda_alpha_masses, py::arg("spec"));
    m.def("mu_alpha", &mu_alpha, py::arg("spec"));
    m.def("discretize_mu_alpha", &discretize_mu_alpha, py::arg("spec"),
          py::arg("radial_nodes") = 500, py::arg("angular_nodes") = 200);
    m.def("verify_extremal", &verify_extremal, py::arg("spec"), py::arg("tol") = 1e-9);

    // ---- polynomial IO ----
    m.def("polynomial_from_json", &polynomial_from_json, py::arg("text"));
    m.def("polynomial_from_csv", &polynomial_from_csv, py::arg("csv"));
}
