#include "spl/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "spl/errors.hpp"
#include "spl/extremal.hpp"
#include "spl/json_io.hpp"
#include "spl/mellin.hpp"
#include "spl/obrechkoff.hpp"
#include "spl/poly.hpp"
#include "spl/potential.hpp"
#include "spl/version.hpp"

namespace spl {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* command_name(Command c) {
    switch (c) {
        case Command::verify_poly: return "verify-poly";
        case Command::verify_measure: return "verify-measure";
        case Command::extremal: return "extremal";
        case Command::mellin_check: return "mellin-check";
        case Command::batch: return "batch";
    }
    return "?";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const RunConfig& config, const std::string& text) {
    if (config.output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + config.output_path);
    out << text;
}

ordered_json config_echo(const RunConfig& config) {
    return ordered_json{{"command", command_name(config.command)},
                        {"input", config.input_path},
                        {"coeffs", config.inline_coeffs},
                        {"alpha", config.alpha},
                        {"a_grid", config.a_grid_size},
                        {"tolerance", config.tolerance},
                        {"format", config.output_format == OutputFormat::json ? "json" : "csv"},
                        {"seed", config.seed},
                        {"out", config.output_path}};
}

ordered_json report_header(const RunConfig& config) {
    return ordered_json{{"tool", "sectorpot"},
                        {"version", version},
                        {"command", command_name(config.command)},
                        {"config", config_echo(config)}};
}

ordered_json inequality_json(const InequalityReport& rep) {
    return ordered_json{{"worst_margin", rep.worst_margin},
                        {"worst_a", rep.worst_a},
                        {"tolerance", rep.tolerance},
                        {"hypothesis_violations", rep.hypothesis_violations},
                        {"passed", rep.passed}};
}

ordered_json inequality_rows(const InequalityReport& rep) {
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < rep.a_grid.size(); ++k)
        rows.push_back(ordered_json{{"a", rep.a_grid[k]},
                                    {"lhs", rep.lhs[k]},
                                    {"rhs", rep.rhs[k]},
                                    {"margin", rep.rhs[k] - rep.lhs[k]}});
    return rows;
}

std::string inequality_csv(const InequalityReport& rep) {
    std::string csv = "a,lhs,rhs,margin\n";
    char line[128];
    for (std::size_t k = 0; k < rep.a_grid.size(); ++k) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", rep.a_grid[k], rep.lhs[k],
                      rep.rhs[k], rep.rhs[k] - rep.lhs[k]);
        csv += line;
    }
    return csv;
}

ordered_json majorization_json(const MajorizationReport& rep) {
    return ordered_json{{"worst_slack", rep.worst_slack},
                        {"worst_point", {{"re", rep.worst_point.real()}, {"im", rep.worst_point.imag()}}},
                        {"grid_size", rep.grid_size},
                        {"tolerance", rep.tolerance},
                        {"passed", rep.passed}};
}

int run_verify_poly(const RunConfig& config) {
    PositivePolynomial poly = [&] {
        if (!config.inline_coeffs.empty()) return polynomial_from_csv(config.inline_coeffs);
        if (!config.input_path.empty()) return polynomial_from_json(read_file(config.input_path));
        throw std::invalid_argument("verify-poly: provide --coeffs or --input");
    }();
    const int d = poly.degree();
    const Measure mu = empirical_measure(poly);

    const bool modulus_ok = check_modulus_bound(poly, 256, config.seed);
    const MajorizationReport maj = check_radial_majorization(mu, config.tolerance);
    const InequalityReport theorem1 =
        check_theorem1(mu, make_a_grid(static_cast<std::size_t>(config.a_grid_size)), config.tolerance);

    std::vector<double> alpha_grid;
    const std::size_t n = static_cast<std::size_t>(config.a_grid_size);
    for (std::size_t k = 1; k < n; ++k) alpha_grid.push_back(0.5 * pi * static_cast<double>(k) / n);
    const double equality_alpha = pi / d;
    if (d >= 3) alpha_grid.push_back(equality_alpha);
    std::sort(alpha_grid.begin(), alpha_grid.end());
    const InequalityReport obrechkoff = check_obrechkoff(mu, alpha_grid, config.tolerance);
    double equality_margin = std::numeric_limits<double>::quiet_NaN();
    if (d >= 3) {
        for (std::size_t k = 0; k < obrechkoff.a_grid.size(); ++k)
            if (obrechkoff.a_grid[k] == equality_alpha)
                equality_margin = obrechkoff.rhs[k] - obrechkoff.lhs[k];
    }

    const bool passed = modulus_ok && maj.passed && theorem1.passed && obrechkoff.passed;

    if (config.output_format == OutputFormat::csv) {
        write_output(config, inequality_csv(theorem1));
        return passed ? 0 : 1;
    }

    ordered_json report = report_header(config);
    ordered_json roots = ordered_json::array();
    for (const auto& [root, mult] : find_roots(poly).roots)
        roots.push_back(ordered_json{{"re", root.real()}, {"im", root.imag()}, {"multiplicity", mult}});
    report["polynomial"] = ordered_json{{"degree", d}, {"coefficients", poly.coefficients()}};
    report["roots"] = roots;
    report["checks"] = ordered_json{{"modulus_bound", ordered_json{{"samples", 256}, {"passed", modulus_ok}}},
                                    {"radial_majorization", majorization_json(maj)},
                                    {"theorem1", inequality_json(theorem1)},
                                    {"obrechkoff", inequality_json(obrechkoff)}};
    if (d >= 3) {
        report["checks"]["obrechkoff"]["equality_alpha"] = equality_alpha;
        report["checks"]["obrechkoff"]["equality_margin"] = equality_margin;
    }
    report["tables"] = ordered_json{{"theorem1", inequality_rows(theorem1)}};
    report["passed"] = passed;
    write_output(config, report.dump(2));
    return passed ? 0 : 1;
}

int run_verify_measure(const RunConfig& config) {
    if (config.input_path.empty())
        throw std::invalid_argument("verify-measure: provide --input with a measure spec");
    const Measure mu = measure_from_json(read_file(config.input_path));

    const bool mass_ok = std::fabs(mu.total_mass() - 1.0) <= 1e-10;
    const bool symmetric = mu.check_symmetry();
    const MajorizationReport maj = check_radial_majorization(mu, config.tolerance);
    const InequalityReport theorem1 =
        check_theorem1(mu, make_a_grid(static_cast<std::size_t>(config.a_grid_size)), config.tolerance);
    std::vector<double> alpha_grid;
    const std::size_t n = static_cast<std::size_t>(config.a_grid_size);
    for (std::size_t k = 1; k < n; ++k) alpha_grid.push_back(0.5 * pi * static_cast<double>(k) / n);
    const InequalityReport obrechkoff = check_obrechkoff(mu, alpha_grid, config.tolerance);

    // negativity detectors for violating measures
    const double j_value = j_functional(mu, KernelParams{pi / 2});
    const double concavity = concavity_difference(mu, pi / 2, RhoParams{0.1});

    const bool hypotheses_ok = mass_ok && symmetric && maj.passed;
    const bool passed = hypotheses_ok && theorem1.passed && obrechkoff.passed;

    if (config.output_format == OutputFormat::csv) {
        write_output(config, inequality_csv(theorem1));
        return passed ? 0 : 1;
    }

    ordered_json report = report_header(config);
    report["hypotheses"] = ordered_json{{"total_mass", mu.total_mass()},
                                        {"probability", mass_ok},
                                        {"symmetric", symmetric},
                                        {"radial_majorization", majorization_json(maj)}};
    report["checks"] = ordered_json{{"theorem1", inequality_json(theorem1)},
                                    {"obrechkoff", inequality_json(obrechkoff)},
                                    {"j_functional_at_pi_over_2", j_value},
                                    {"concavity_difference_at_pi_over_2", concavity}};
    report["tables"] = ordered_json{{"theorem1", inequality_rows(theorem1)}};
    report["passed"] = passed;
    write_output(config, report.dump(2));
    return passed ? 0 : 1;
}

int run_extremal(const RunConfig& config) {
    const ExtremalSpec spec{config.alpha};
    const LambdaMasses masses = lambda_alpha_masses(spec);
    const VerificationReport verification = verify_extremal(spec, config.tolerance);
    const Measure mu = mu_alpha(spec);

    const std::size_t table_size = 512;
    std::vector<double> ts = linspace(0.0, pi, table_size);
    ordered_json mass_json = ordered_json{
        {"alpha", config.alpha},
        {"lambda", ordered_json{{"atom_mass_each", masses.atom_mass_each},
                                {"sector_mass", masses.sector_mass},
                                {"sector_mass_quadrature", masses.sector_mass_quadrature},
                                {"total", masses.total}}},
        {"mu", ordered_json{{"atom_mass_each", config.alpha / pi},
                            {"tail_mass", (pi - 2.0 * config.alpha) / pi},
                            {"total", mu.total_mass()},
                            {"sector_mass_at_alpha", mu.sector_mass(config.alpha)},
                            {"equality_rhs", 2.0 * config.alpha / pi}}}};
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : verification.checks)
        checks.push_back(ordered_json{{"name", c.name},
                                      {"value", c.value},
                                      {"threshold", c.threshold},
                                      {"worst_location", c.worst_location},
                                      {"passed", c.passed}});

    if (config.output_format == OutputFormat::csv) {
        std::string csv = "t,m\n";
        char line[80];
        for (double t : ts) {
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", t, mu.sector_mass(t));
            csv += line;
        }
        write_output(config, csv);
        ordered_json sidecar = report_header(config);
        sidecar["masses"] = mass_json;
        sidecar["checks"] = checks;
        sidecar["passed"] = verification.passed;
        if (!config.output_path.empty()) {
            std::ofstream side(config.output_path + ".json", std::ios::binary);
            if (!side)
                throw std::invalid_argument("cannot open sidecar file: " + config.output_path + ".json");
            side << sidecar.dump(2);
        } else {
            std::cerr << sidecar.dump(2) << "\n";
        }
        return verification.passed ? 0 : 1;
    }

    ordered_json report = report_header(config);
    report["masses"] = mass_json;
    report["checks"] = checks;
    ordered_json table = ordered_json::array();
    for (double t : ts) table.push_back(ordered_json{{"t", t}, {"m", mu.sector_mass(t)}});
    report["tables"] = ordered_json{{"sector_mass", table}};
    report["passed"] = verification.passed;
    write_output(config, report.dump(2));
    return verification.passed ? 0 : 1;
}

int run_mellin_check(const RunConfig& config) {
    // closed form vs quadrature on seeded random samples
    std::mt19937_64 gen(config.seed);
    std::uniform_real_distribution<double> rho_dist(0.05, 0.95);
    std::uniform_real_distribution<double> log_radius(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> angle(-pi, pi);
    double worst_diff = 0.0;
    ordered_json samples = ordered_json::array();
    for (int k = 0; k < 50; ++k) {
        const RhoParams p{rho_dist(gen)};
        const complex z = std::polar(std::exp(log_radius(gen)), angle(gen));
        const double closed = mellin_log_integral(z, p, MellinMode::closed_form);
        const double quad = mellin_log_integral(z, p, MellinMode::quadrature);
        worst_diff = std::max(worst_diff, std::fabs(closed - quad));
    }
    const bool samples_ok = worst_diff <= 1e-6;

    // kernel limit: fitted proportionality constant per a
    const std::vector<double> t_grid = linspace(-pi, pi, 100);
    ordered_json fits = ordered_json::array();
    bool fits_ok = true;
    double kappa_table = 0.0;
    for (double a : {pi / 6, pi / 2}) {
        const LimitFit fit = limit_factor_estimate(a, t_grid);
        fits_ok = fits_ok && fit.kappa > 0.0 && fit.max_residual <= 1e-3 * fit.max_kernel;
        if (a == pi / 6) kappa_table = fit.kappa;
        fits.push_back(ordered_json{{"a", a},
                                    {"kappa", fit.kappa},
                                    {"max_residual", fit.max_residual},
                                    {"max_kernel", fit.max_kernel}});
    }

    const bool passed = samples_ok && fits_ok;

    if (config.output_format == OutputFormat::csv) {
        // (t, extrapolated J_rho/rho^2, kappa*J(t)) for a = pi/6
        std::string csv = "t,j_limit,kappa_J\n";
        char line[120];
        for (double t : t_grid) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t, kernel_limit(t, pi / 6),
                          kappa_table * kernel_J(t, KernelParams{pi / 6}));
            csv += line;
        }
        write_output(config, csv);
        return passed ? 0 : 1;
    }

    ordered_json report = report_header(config);
    report["checks"] =
        ordered_json{{"closed_vs_quadrature",
                      ordered_json{{"samples", 50}, {"worst_abs_diff", worst_diff},
                                   {"tolerance", 1e-6}, {"passed", samples_ok}}},
                     {"kernel_limit_fits", fits}};
    report["passed"] = passed;
    write_output(config, report.dump(2));
    return passed ? 0 : 1;
}

RunConfig job_to_config(const ordered_json& job);

int run_batch(const RunConfig& config) {
    if (config.input_path.empty())
        throw std::invalid_argument("batch: provide --input with a job list");
    ordered_json root;
    try {
        root = ordered_json::parse(read_file(config.input_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("batch JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("jobs") || !root["jobs"].is_array())
        throw std::invalid_argument("batch JSON: expected {\"jobs\": [...]}");

    int exit_code = 0;
    ordered_json results = ordered_json::array();
    for (const auto& job : root["jobs"]) {
        const RunConfig sub = job_to_config(job);
        const int code = run(sub);
        exit_code = std::max(exit_code, code);
        results.push_back(
            ordered_json{{"command", command_name(sub.command)}, {"exit_code", code}});
    }
    ordered_json report = report_header(config);
    report["jobs"] = results;
    write_output(config, report.dump(2));
    return exit_code;
}

RunConfig job_to_config(const ordered_json& job) {
    if (!job.is_object()) throw std::invalid_argument("batch job must be an object");
    RunConfig sub;
    bool has_command = false;
    for (const auto& [key, value] : job.items()) {
        if (key == "command") {
            const std::string name = value.get<std::string>();
            if (name == "verify-poly") sub.command = Command::verify_poly;
            else if (name == "verify-measure") sub.command = Command::verify_measure;
            else if (name == "extremal") sub.command = Command::extremal;
            else if (name == "mellin-check") sub.command = Command::mellin_check;
            else throw std::invalid_argument("batch job: unknown command " + name);
            has_command = true;
        } else if (key == "input") sub.input_path = value.get<std::string>();
        else if (key == "coeffs") sub.inline_coeffs = value.get<std::string>();
        else if (key == "alpha") sub.alpha = value.get<double>();
        else if (key == "a_grid") sub.a_grid_size = value.get<int>();
        else if (key == "tol") sub.tolerance = value.get<double>();
        else if (key == "seed") sub.seed = value.get<std::uint64_t>();
        else if (key == "out") sub.output_path = value.get<std::string>();
        else if (key == "format")
            sub.output_format =
                value.get<std::string>() == "csv" ? OutputFormat::csv : OutputFormat::json;
        else throw std::invalid_argument("batch job: unknown key " + key);
    }
    if (!has_command) throw std::invalid_argument("batch job: missing command");
    return sub;
}

void emit_error(const char* type, const std::string& message) {
    std::cerr << ordered_json{{"error", ordered_json{{"type", type}, {"message", message}}}}.dump()
              << "\n";
}

}  // namespace

int run(const RunConfig& config) {
    try {
        if (config.a_grid_size < 2) throw std::invalid_argument("grid size must be >= 2");
        if (!(config.tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
        switch (config.command) {
            case Command::verify_poly: return run_verify_poly(config);
            case Command::verify_measure: return run_verify_measure(config);
            case Command::extremal: return run_extremal(config);
            case Command::mellin_check: return run_mellin_check(config);
            case Command::batch: return run_batch(config);
        }
        return 2;
    } catch (const NonConvergence& e) {
        emit_error("non_convergence", e.what());
        return 3;
    } catch (const IllConditioned& e) {
        emit_error("ill_conditioned", e.what());
        return 3;
    } catch (const QuadratureMismatch& e) {
        emit_error("quadrature_mismatch", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        emit_error("invalid_input", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        emit_error("domain_error", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("error", e.what());
        return 2;
    }
}

}  // namespace spl
