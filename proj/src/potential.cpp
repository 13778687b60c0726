#include "spl/potential.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "spl/detail/extremal_density.hpp"
#include "spl/extremal.hpp"
#include "spl/parallel.hpp"
#include "spl/quadrature.hpp"

namespace spl {

namespace {

// ---- generic density components, normalized kernel --------------------------

// Angular integral of log|1 - (z/r) e^{-i phi}| over the tail support
// {|phi| in [2 alpha, pi]}.
double tail_angular_kernel(complex z, double r, double alpha) {
    const complex w = z / r;
    auto f = [&](double phi) { return log_abs_one_minus(w * std::polar(1.0, -phi)); };
    const QuadratureSpec spec{1e-9, 1e-9, 4000};
    return integrate(f, 2.0 * alpha, pi, spec) + integrate(f, -pi, -2.0 * alpha, spec);
}

double tail_normalized(const ExtremalTail& tail, complex z) {
    const double alpha = tail.alpha;
    const double R = std::abs(z);
    auto radial = [&](double r) {
        return tail_angular_kernel(z, r, alpha) * r * detail::rho_alpha_density(r, alpha);
    };
    const QuadratureSpec spec{1e-8, 1e-8, 4000};
    // split at the kernel singularity radius |z|, mapping the outer part to (0, 1]
    const double inner = integrate(radial, 0.0, R, spec);
    const double outer = integrate([&](double v) { return radial(R / v) * R / (v * v); },
                                   0.0, 1.0, spec);
    return tail.mass_scale * (inner + outer);
}

struct CellBox {
    double L0, L1, p0, p1;
};

double tabulated_cell_kernel(const TabulatedDensity& tab, const CellBox& box, complex z,
                             double Lz, double tz, int depth) {
    const double diam = std::max(box.L1 - box.L0, box.p1 - box.p0);
    const bool near = Lz > box.L0 - diam && Lz < box.L1 + diam &&
                      tz > box.p0 - diam && tz < box.p1 + diam;
    if (near && depth < 9) {
        const double Lm = 0.5 * (box.L0 + box.L1);
        const double pm = 0.5 * (box.p0 + box.p1);
        return tabulated_cell_kernel(tab, {box.L0, Lm, box.p0, pm}, z, Lz, tz, depth + 1) +
               tabulated_cell_kernel(tab, {Lm, box.L1, box.p0, pm}, z, Lz, tz, depth + 1) +
               tabulated_cell_kernel(tab, {box.L0, Lm, pm, box.p1}, z, Lz, tz, depth + 1) +
               tabulated_cell_kernel(tab, {Lm, box.L1, pm, box.p1}, z, Lz, tz, depth + 1);
    }
    // tensor Gauss-Legendre 8 on the (L, theta) cell
    static constexpr double gx[4] = {0.1834346424956498, 0.5255324099163290,
                                     0.7966664774136267, 0.9602898564975363};
    static constexpr double gw[4] = {0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
    const double Lc = 0.5 * (box.L0 + box.L1), Lh = 0.5 * (box.L1 - box.L0);
    const double pc = 0.5 * (box.p0 + box.p1), ph = 0.5 * (box.p1 - box.p0);
    double sum = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int sa = -1; sa <= 1; sa += 2) {
            const double L = Lc + sa * Lh * gx[a];
            const double r = std::exp(L);
            double inner = 0.0;
            for (int b = 0; b < 4; ++b) {
                for (int sb = -1; sb <= 1; sb += 2) {
                    const double th = pc + sb * ph * gx[b];
                    const double f = tab.value_at(r, th);
                    if (f != 0.0)
                        inner += gw[b] * f * log_abs_one_minus(z / std::polar(r, th));
                }
            }
            sum += gw[a] * inner * std::exp(2.0 * L);
        }
    }
    return sum * Lh * ph;
}

double tabulated_normalized(const TabulatedDensity& tab, complex z) {
    const double Lz = std::log(std::max(std::abs(z), 1e-300));
    const double tz = principal_arg(z);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < tab.radial_grid.size(); ++i) {
        for (std::size_t j = 0; j + 1 < tab.angular_grid.size(); ++j) {
            const CellBox box{std::log(tab.radial_grid[i]), std::log(tab.radial_grid[i + 1]),
                              tab.angular_grid[j], tab.angular_grid[j + 1]};
            total += tabulated_cell_kernel(tab, box, z, Lz, tz, 0);
        }
    }
    return total;
}

}  // namespace

double normalized_potential(const Measure& m, complex z) {
    if (const auto pure = m.pure_extremal())
        return pure->scale * u_alpha(z, ExtremalSpec{pure->alpha});

    double u = 0.0;
    const double az = std::abs(z);
    for (const Component& c : m.components()) {
        if (const auto* atom = std::get_if<Atom>(&c)) {
            if (atom->mass > 0.0) u += atom->mass * log_abs_one_minus(z / atom->location);
        } else if (const auto* circle = std::get_if<UniformCircle>(&c)) {
            if (az > circle->radius) u += circle->mass * std::log(az / circle->radius);
        } else if (const auto* tail = std::get_if<ExtremalTail>(&c)) {
            if (az > 0.0) u += tail_normalized(*tail, z);
            // z = 0 contributes log|1 - 0| = 0
        } else {
            if (az > 0.0) u += tabulated_normalized(std::get<TabulatedDensity>(c), z);
        }
    }
    return u;
}

double log_potential(const Measure& m, complex z) {
    return normalized_potential(m, z) + m.inner_log_moment();
}

MajorizationReport check_radial_majorization(const Measure& m,
                                             std::span<const double> r_grid,
                                             std::span<const double> theta_grid,
                                             double tol) {
    std::vector<double> radii(r_grid.begin(), r_grid.end());
    std::vector<double> angles(theta_grid.begin(), theta_grid.end());
    std::sort(radii.begin(), radii.end());
    std::sort(angles.begin(), angles.end());
    if (radii.empty() || angles.empty())
        throw std::invalid_argument("check_radial_majorization: empty grid");
    if (radii.front() <= 0.0)
        throw std::invalid_argument("check_radial_majorization: radii must be > 0");

    const std::size_t nr = radii.size();
    const std::size_t nt = angles.size();
    std::vector<double> slack(nr * nt);
    parallel_for(nr, [&](std::size_t i) {
        const double r = radii[i];
        const double u_axis = normalized_potential(m, complex(r, 0.0));
        for (std::size_t j = 0; j < nt; ++j)
            slack[i * nt + j] = u_axis - normalized_potential(m, std::polar(r, angles[j]));
    });

    MajorizationReport report;
    report.grid_size = static_cast<int>(nr * nt);
    report.tolerance = tol;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t worst_index = 0;
    for (std::size_t k = 0; k < slack.size(); ++k) {
        const double s = slack[k];
        if (std::isnan(s)) continue;       // -inf vs -inf: point of the measure, satisfied
        if (s == std::numeric_limits<double>::infinity()) continue;
        if (s < worst) {
            worst = s;
            worst_index = k;
        }
    }
    report.worst_slack = worst;
    report.worst_point = std::polar(radii[worst_index / nt], angles[worst_index % nt]);
    report.passed = worst >= -tol;
    return report;
}

std::pair<std::vector<double>, std::vector<double>> default_majorization_grid(const Measure& m) {
    const auto [lo, hi] = m.support_radius_range();
    std::vector<double> radii = logspace(0.1 * lo, 10.0 * hi, 64);
    std::vector<double> angles(128);
    for (int j = 1; j <= 128; ++j) angles[j - 1] = -pi + j * (two_pi / 128.0);
    return {std::move(radii), std::move(angles)};
}

MajorizationReport check_radial_majorization(const Measure& m, double tol) {
    const auto [radii, angles] = default_majorization_grid(m);
    return check_radial_majorization(m, radii, angles, tol);
}

}  // namespace spl
