#include "spl/obrechkoff.hpp"

#include <cmath>
#include <stdexcept>

namespace spl {

namespace {

void validate_a(double a) {
    if (!(a > 0.0 && a <= pi + 1e-12))
        throw std::domain_error("kernel parameter a must lie in (0, pi]");
}

std::vector<std::string> hypothesis_flags(const Measure& m) {
    std::vector<std::string> flags;
    if (std::fabs(m.total_mass() - 1.0) > 1e-10)
        flags.push_back("total mass " + std::to_string(m.total_mass()) + " is not 1");
    if (!m.check_symmetry())
        flags.push_back("measure is not symmetric about the real axis");
    return flags;
}

// int_{x0}^{x1} (A + B t) g(t) dt for the linear density of one piece.
double linear_kernel_piece(double A, double B, const SectorMassFunction::Piece& p,
                           double x0, double x1) {
    if (!(x0 < x1)) return 0.0;
    const double slope = (p.g_hi - p.g_lo) / (p.hi - p.lo);
    const double C = p.g_lo - slope * p.lo;
    const double D = slope;
    const double s1 = x1 - x0;
    const double s2 = 0.5 * (x1 * x1 - x0 * x0);
    const double s3 = (x1 * x1 * x1 - x0 * x0 * x0) / 3.0;
    return A * C * s1 + (A * D + B * C) * s2 + B * D * s3;
}

}  // namespace

std::vector<double> make_a_grid(std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t k = 1; k <= n; ++k) grid[k - 1] = pi * static_cast<double>(k) / static_cast<double>(n);
    return grid;
}

double averaged_mass(const Measure& m, double a) {
    validate_a(a);
    a = std::min(a, pi);
    return m.angular_projection().integral(a) / a;
}

InequalityReport check_theorem1(const Measure& m, std::span<const double> a_grid, double tol) {
    InequalityReport report;
    report.tolerance = tol;
    report.hypothesis_violations = hypothesis_flags(m);
    report.a_grid.assign(a_grid.begin(), a_grid.end());
    report.lhs.reserve(a_grid.size());
    report.rhs.reserve(a_grid.size());
    double worst = std::numeric_limits<double>::infinity();
    for (double a : report.a_grid) {
        const double lhs = averaged_mass(m, a);
        const double rhs = a / two_pi;
        report.lhs.push_back(lhs);
        report.rhs.push_back(rhs);
        const double margin = rhs - lhs;
        if (margin < worst) {
            worst = margin;
            report.worst_a = a;
        }
    }
    report.worst_margin = worst;
    report.passed = worst >= -tol;
    return report;
}

InequalityReport check_obrechkoff(const Measure& m, std::span<const double> alpha_grid, double tol) {
    InequalityReport report;
    report.tolerance = tol;
    report.hypothesis_violations = hypothesis_flags(m);
    report.a_grid.assign(alpha_grid.begin(), alpha_grid.end());
    double worst = std::numeric_limits<double>::infinity();
    for (double alpha : report.a_grid) {
        if (!(alpha > 0.0 && alpha < pi / 2))
            throw std::domain_error("check_obrechkoff: alpha must lie in (0, pi/2)");
        const double lhs = m.sector_mass(alpha);
        const double rhs = 2.0 * alpha / pi;
        report.lhs.push_back(lhs);
        report.rhs.push_back(rhs);
        const double margin = rhs - lhs;
        if (margin < worst) {
            worst = margin;
            report.worst_a = alpha;
        }
    }
    report.worst_margin = worst;
    report.passed = worst >= -tol;
    return report;
}

ChainReport check_chain(const Measure& m, double alpha, double tol) {
    if (!(alpha > 0.0 && alpha < pi / 2))
        throw std::domain_error("check_chain: alpha must lie in (0, pi/2)");
    const auto& proj = m.angular_projection();
    const double a = 2.0 * alpha;
    ChainReport report;
    report.alpha = alpha;
    report.values[0] = proj(alpha);
    report.values[1] = (proj.integral(a) - proj.integral(alpha)) / alpha;
    report.values[2] = proj.integral(a) / alpha;  // (2/a) int_0^a m
    report.values[3] = a / pi;
    for (int k = 0; k < 3; ++k) report.margins[k] = report.values[k + 1] - report.values[k];
    report.passed = report.margins[0] >= -tol && report.margins[1] >= -tol &&
                    report.margins[2] >= -tol;
    return report;
}

double kernel_J(double t, KernelParams params) {
    validate_a(params.a);
    const double at = std::fabs(t);
    if (at > pi + 1e-12) throw std::domain_error("kernel_J: |t| must be <= pi");
    const double a = params.a;
    if (at <= a) return 4.0 * pi * at - 4.0 * pi * a + 2.0 * a * a;
    return 2.0 * a * a;
}

double j_functional(const Measure& m, KernelParams params) {
    validate_a(params.a);
    const double a = params.a;
    const auto& proj = m.angular_projection();
    double total = 0.0;
    for (const auto& jump : proj.jumps()) total += jump.mass * kernel_J(jump.t, params);
    for (const auto& piece : proj.pieces()) {
        // J is linear (slope 4 pi) below a and constant above it.
        total += linear_kernel_piece(2.0 * a * a - 4.0 * pi * a, 4.0 * pi, piece,
                                     piece.lo, std::min(piece.hi, a));
        total += linear_kernel_piece(2.0 * a * a, 0.0, piece, std::max(piece.lo, a), piece.hi);
    }
    return total;
}

bool ibp_identity_check(const Measure& m, KernelParams params, double tol) {
    validate_a(params.a);
    const double a = std::min(params.a, pi);
    const auto& proj = m.angular_projection();
    const double left = j_functional(m, params);
    const double right = 2.0 * a * a * proj(pi) - 4.0 * pi * proj.integral(a);
    return std::fabs(left - right) <= tol;
}

}  // namespace spl
