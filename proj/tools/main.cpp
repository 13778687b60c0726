#include <CLI11.hpp>

#include "spl/cli.hpp"
#include "spl/version.hpp"

namespace {

void add_common_flags(CLI::App* cmd, spl::RunConfig& config) {
    cmd->add_option("--input", config.input_path, "Input file (JSON)");
    cmd->add_option("--a-grid", config.a_grid_size, "Grid size for the a sweep")
        ->check(CLI::Range(2, 100000));
    cmd->add_option("--tol", config.tolerance, "Pass/fail tolerance");
    cmd->add_option("--format", [&config](const std::vector<std::string>& v) {
            if (v.back() == "json") config.output_format = spl::OutputFormat::json;
            else if (v.back() == "csv") config.output_format = spl::OutputFormat::csv;
            else return false;
            return true;
        }, "Output format: json or csv")->expected(1);
    cmd->add_option("--seed", config.seed, "Seed for deterministic sampling");
    cmd->add_option("--out", config.output_path, "Output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sectorpot: logarithmic potentials, sector-mass inequalities, extremal measures"};
    app.set_version_flag("--version", std::string("sectorpot ") + spl::version);
    app.require_subcommand(1);

    spl::RunConfig config;

    CLI::App* verify_poly = app.add_subcommand(
        "verify-poly", "Verify the inequality suite for a positive-coefficient polynomial");
    verify_poly->add_option("--coeffs", config.inline_coeffs,
                            "Inline coefficients c0,c1,...,cd (ascending powers)");
    add_common_flags(verify_poly, config);

    CLI::App* verify_measure =
        app.add_subcommand("verify-measure", "Verify the inequality suite for a measure spec");
    add_common_flags(verify_measure, config);

    CLI::App* extremal =
        app.add_subcommand("extremal", "Construct and verify the equality measure for one alpha");
    extremal->add_option("--alpha", config.alpha, "Sector half-angle in (0, pi/2)");
    add_common_flags(extremal, config);

    CLI::App* mellin =
        app.add_subcommand("mellin-check", "Cross-check the transform closed forms and kernel limit");
    add_common_flags(mellin, config);

    CLI::App* batch = app.add_subcommand("batch", "Run a JSON list of jobs");
    add_common_flags(batch, config);

    CLI11_PARSE(app, argc, argv);

    if (verify_poly->parsed()) config.command = spl::Command::verify_poly;
    else if (verify_measure->parsed()) config.command = spl::Command::verify_measure;
    else if (extremal->parsed()) config.command = spl::Command::extremal;
    else if (mellin->parsed()) config.command = spl::Command::mellin_check;
    else if (batch->parsed()) config.command = spl::Command::batch;

    return spl::run(config);
}
