#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spl/measure.hpp"

namespace spl {

struct MajorizationReport {
    double worst_slack = 0.0;   // min over the grid of u(|z|) - u(z)
    complex worst_point{0.0, 0.0};
    int grid_size = 0;
    bool passed = false;
    double tolerance = 0.0;
};

/// Split-kernel potential: log|z - zeta| against components with |zeta| <= 1,
/// log|1 - z/zeta| against components with |zeta| > 1. May return -inf.
double log_potential(const Measure& m, complex z);

/// Normalized potential int log|1 - z/zeta| dmu(zeta); differs from
/// log_potential by the constant inner_log_moment(). May return -inf.
double normalized_potential(const Measure& m, complex z);

/// Evaluate u(r) - u(r e^{i theta}) over the grid product and report the
/// minimum slack. Points where u(z) = -inf are trivially satisfied and
/// skipped; ties resolve to the smallest radius, then the smallest angle.
MajorizationReport check_radial_majorization(const Measure& m,
                                             std::span<const double> r_grid,
                                             std::span<const double> theta_grid,
                                             double tol);

/// Same on the default grid: 64 log-spaced radii spanning
/// [0.1 r_min_support, 10 r_max_support] by 128 uniform angles.
MajorizationReport check_radial_majorization(const Measure& m, double tol = 1e-9);

std::pair<std::vector<double>, std::vector<double>> default_majorization_grid(const Measure& m);

}  // namespace spl
