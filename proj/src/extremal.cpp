#include "spl/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spl/detail/extremal_density.hpp"
#include "spl/errors.hpp"
#include "spl/obrechkoff.hpp"
#include "spl/parallel.hpp"
#include "spl/potential.hpp"
#include "spl/quadrature.hpp"

namespace spl {

namespace {

void validate_spec(ExtremalSpec spec) {
    if (!(spec.alpha > 0.0 && spec.alpha < pi / 2))
        throw std::domain_error("ExtremalSpec: alpha must lie in (0, pi/2)");
}

}  // namespace

double base_potential(complex z) {
    const double az = std::abs(z);
    if (az > 1e100) return 2.0 * std::log(az);
    return std::log(std::abs(z * z + 1.0));
}

double u_alpha(complex z, ExtremalSpec spec) {
    validate_spec(spec);
    const double r = std::abs(z);
    if (r == 0.0) return 0.0;
    const double p = detail::tail_exponent(spec.alpha);
    const double x = p * std::log(r);
    const double theta = principal_arg(z);
    if (std::fabs(theta) < 2.0 * spec.alpha) {
        // log|r^p e^{i p theta} + 1|, evaluated from the smaller modulus side
        const double cosine = std::cos(p * theta);
        if (x <= 0.0) {
            const double y = std::exp(x);
            return 0.5 * std::log1p(y * (2.0 * cosine + y));
        }
        const double y = std::exp(-x);
        return x + 0.5 * std::log1p(y * (2.0 * cosine + y));
    }
    return softplus(x);  // log(r^p + 1)
}

double rho_alpha(double r, ExtremalSpec spec) {
    validate_spec(spec);
    if (!(r > 0.0)) throw std::domain_error("rho_alpha: r must be > 0");
    return detail::rho_alpha_density(r, spec.alpha);
}

LambdaMasses lambda_alpha_masses(ExtremalSpec spec) {
    validate_spec(spec);
    const double alpha = spec.alpha;
    LambdaMasses masses;
    masses.atom_mass_each = 1.0;
    masses.sector_mass = (pi - 2.0 * alpha) / alpha;
    masses.sector_mass_quadrature =
        (two_pi - 4.0 * alpha) *
        integrate_halfline([alpha](double r) { return r * detail::rho_alpha_density(r, alpha); },
                           QuadratureSpec{1e-12, 1e-12, 6000});
    masses.total = 2.0 + masses.sector_mass;
    if (std::fabs(masses.sector_mass_quadrature - masses.sector_mass) > 1e-6)
        throw QuadratureMismatch("lambda_alpha_masses: quadrature disagrees with closed form");
    return masses;
}

Measure mu_alpha(ExtremalSpec spec) {
    validate_spec(spec);
    const double w = spec.alpha / pi;
    std::vector<Component> comps;
    comps.push_back(Atom{std::polar(1.0, spec.alpha), w});
    comps.push_back(Atom{std::polar(1.0, -spec.alpha), w});
    comps.push_back(ExtremalTail{spec.alpha, w});
    return Measure(std::move(comps));
}

Measure discretize_mu_alpha(ExtremalSpec spec, std::size_t radial_nodes, std::size_t angular_nodes) {
    validate_spec(spec);
    const double alpha = spec.alpha;
    const double w = alpha / pi;
    const double tail_mass = w * (pi - 2.0 * alpha) / alpha;
    const double node_mass = tail_mass / (static_cast<double>(radial_nodes) * angular_nodes);

    std::vector<Component> comps;
    comps.reserve(radial_nodes * angular_nodes + 2);
    comps.push_back(Atom{std::polar(1.0, alpha), w});
    comps.push_back(Atom{std::polar(1.0, -alpha), w});
    const double span = two_pi - 4.0 * alpha;
    for (std::size_t i = 0; i < radial_nodes; ++i) {
        const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(radial_nodes);
        const double r = detail::tail_radial_quantile(q, alpha);
        for (std::size_t j = 0; j < angular_nodes; ++j) {
            double phi = 2.0 * alpha + (static_cast<double>(j) + 0.5) * span / angular_nodes;
            if (phi > pi) phi -= two_pi;
            comps.push_back(Atom{std::polar(r, phi), node_mass});
        }
    }
    return Measure(std::move(comps));
}

VerificationReport verify_extremal(ExtremalSpec spec, double tol) {
    validate_spec(spec);
    const double alpha = spec.alpha;
    VerificationReport report;
    report.tolerance = tol;

    // (i) radial majorization of the closed-form u_alpha on a grid
    {
        const auto radii = logspace(0.1, 10.0, 64);
        std::vector<double> angles(128);
        for (int j = 1; j <= 128; ++j) angles[j - 1] = -pi + j * (two_pi / 128.0);
        double worst = std::numeric_limits<double>::infinity();
        double worst_r = radii.front(), worst_t = angles.front();
        for (double r : radii) {
            const double axis = u_alpha(complex(r, 0.0), spec);
            for (double t : angles) {
                const double s = axis - u_alpha(std::polar(r, t), spec);
                if (std::isnan(s) || s == std::numeric_limits<double>::infinity()) continue;
                if (s < worst) {
                    worst = s;
                    worst_r = r;
                    worst_t = t;
                }
            }
        }
        report.checks.push_back({"u_alpha radial majorization (min slack)", worst, -tol,
                                 "r=" + std::to_string(worst_r) + " theta=" + std::to_string(worst_t),
                                 worst >= -tol});
    }

    const Measure mu = mu_alpha(spec);

    // (ii) sector-mass equality at alpha
    {
        const double deviation = std::fabs(mu.sector_mass(alpha) - 2.0 * alpha / pi);
        report.checks.push_back(
            {"sector mass at alpha vs 2 alpha/pi (|deviation|)", deviation, tol,
             "t=alpha", deviation <= tol});
    }

    // (iii) averaged bound over an a-grid containing a = 2 alpha, tight there
    {
        std::vector<double> grid = make_a_grid(200);
        grid.push_back(2.0 * alpha);
        std::sort(grid.begin(), grid.end());
        const InequalityReport ineq = check_theorem1(mu, grid, tol);
        double margin_at = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (grid[k] == 2.0 * alpha)
                margin_at = std::min(margin_at, std::fabs(ineq.rhs[k] - ineq.lhs[k]));
        }
        const bool ok = ineq.passed && margin_at <= tol;
        report.checks.push_back({"averaged bound margin at a=2 alpha (and grid pass)", margin_at,
                                 tol, "a=2 alpha", ok});
    }

    // (iv) normalized potential of the discretized measure vs (alpha/pi) u_alpha
    {
        const Measure disc = discretize_mu_alpha(spec);
        const double scale = alpha / pi;
        const auto radii = logspace(0.5, 2.16, 5);
        const double probe_angles[4] = {0.0, 0.45 * alpha, -0.45 * alpha, pi};
        std::vector<double> diffs;
        diffs.reserve(20);
        for (double r : radii)
            for (double t : probe_angles) {
                const complex z = std::polar(r, t);
                diffs.push_back(normalized_potential(disc, z) - scale * u_alpha(z, spec));
            }
        const auto [lo, hi] = std::minmax_element(diffs.begin(), diffs.end());
        const double spread = *hi - *lo;
        report.checks.push_back({"potential consistency (spread over 20 probes)", spread, 1e-3,
                                 "probe grid", spread <= 1e-3});
    }

    report.passed = true;
    for (const CheckResult& c : report.checks) report.passed = report.passed && c.passed;
    return report;
}

}  // namespace spl
