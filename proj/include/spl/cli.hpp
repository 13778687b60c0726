#pragma once

#include <cstdint>
#include <string>

#include "spl/numeric.hpp"

namespace spl {

enum class Command { verify_poly, verify_measure, extremal, mellin_check, batch };
enum class OutputFormat { json, csv };

struct RunConfig {
    Command command = Command::verify_poly;
    std::string input_path;     // file input; empty = none
    std::string inline_coeffs;  // "c0,c1,..." for verify-poly
    double alpha = pi / 4;      // extremal
    int a_grid_size = 200;
    double tolerance = 1e-9;
    OutputFormat output_format = OutputFormat::json;
    std::uint64_t seed = 1;
    std::string output_path;    // empty = stdout
};

/// Execute the configured command and write its report.
/// Exit codes: 0 all checks passed, 1 inequality violation beyond tolerance,
/// 2 input/usage error, 3 numerical failure (non-convergence).
int run(const RunConfig& config);

}  // namespace spl
