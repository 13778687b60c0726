#pragma once

#include <span>
#include <string>
#include <vector>

#include "spl/measure.hpp"

namespace spl {

struct KernelParams {
    double a = 0.0;  // in (0, pi]
};

struct InequalityReport {
    std::vector<double> a_grid;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double worst_margin = 0.0;  // min over the grid of rhs - lhs
    double worst_a = 0.0;
    bool passed = false;        // worst_margin >= -tolerance
    double tolerance = 0.0;
    /// Violated hypotheses (mass != 1, asymmetry); informational, not fatal.
    std::vector<std::string> hypothesis_violations;
};

/// The three-link chain m(alpha) <= (1/alpha) int_alpha^{2alpha} m
/// <= (2/a) int_0^a m <= a/pi with a = 2 alpha.
struct ChainReport {
    double alpha = 0.0;
    double values[4] = {0, 0, 0, 0};   // m(alpha), middle average, doubled average, a/pi
    double margins[3] = {0, 0, 0};     // successive link slacks
    bool passed = false;
};

/// (1/a) int_0^a m(t) dt; exact for step functions, closed-form for the
/// piecewise-linear density part.
double averaged_mass(const Measure& m, double a);

/// Averaged sector-mass bound (1/a) int_0^a m <= a/(2 pi) on an a-grid.
InequalityReport check_theorem1(const Measure& m, std::span<const double> a_grid, double tol);

/// Pointwise sector bound m(alpha) <= 2 alpha / pi on an alpha-grid in (0, pi/2).
InequalityReport check_obrechkoff(const Measure& m, std::span<const double> alpha_grid, double tol);

ChainReport check_chain(const Measure& m, double alpha, double tol);

/// Piecewise-linear limit kernel: 4 pi |t| - 4 pi a + 2 a^2 on |t| <= a,
/// 2 a^2 on a < |t| <= pi.
double kernel_J(double t, KernelParams params);

/// int_{[0, pi]} J(t) dm(t) over the folded angular distribution.
double j_functional(const Measure& m, KernelParams params);

/// Verifies j_functional == 2 a^2 m(pi) - 4 pi int_0^a m(t) dt within tol,
/// both sides computed along independent paths.
bool ibp_identity_check(const Measure& m, KernelParams params, double tol);

/// Convenience: {pi k/n : k = 1..n}.
std::vector<double> make_a_grid(std::size_t n);

}  // namespace spl
