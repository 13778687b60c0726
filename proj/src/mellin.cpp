#include "spl/mellin.hpp"

#include <cmath>
#include <stdexcept>

#include "spl/detail/extremal_density.hpp"
#include "spl/errors.hpp"
#include "spl/obrechkoff.hpp"
#include "spl/quadrature.hpp"

namespace spl {

namespace {

void validate_rho(RhoParams p) {
    if (!(p.rho > 0.0 && p.rho < 1.0))
        throw std::domain_error("rho must lie in (0, 1)");
}

void validate_a(double a) {
    if (!(a > 0.0 && a <= pi + 1e-12))
        throw std::domain_error("kernel parameter a must lie in (0, pi]");
}

constexpr double kSeriesCut = 1e-4;

// log|1 - c y| / y extended by its limit -Re(c) at y = 0.
double log_ratio(complex c, double y) {
    if (y < kSeriesCut) {
        const complex c2 = c * c;
        const complex c3 = c2 * c;
        const complex c4 = c3 * c;
        return -c.real() - 0.5 * c2.real() * y - c3.real() * y * y / 3.0 -
               0.25 * c4.real() * y * y * y;
    }
    return log_abs_one_minus(c * y) / y;
}

}  // namespace

double c_rho(RhoParams p) {
    validate_rho(p);
    return pi / (p.rho * std::sin(pi * p.rho));
}

double phi_rho(double theta, RhoParams p) {
    validate_rho(p);
    return std::cos(p.rho * (wrap_two_pi(theta) - pi));
}

double phi_rho_antiderivative(double x, RhoParams p) {
    validate_rho(p);
    const double rho = p.rho;
    const double period = 2.0 * std::sin(rho * pi) / rho;
    const double k = std::floor(x / two_pi);
    const double frac = x - two_pi * k;
    return k * period + (std::sin(rho * (frac - pi)) + std::sin(rho * pi)) / rho;
}

double mellin_log_integral(complex z, RhoParams p, MellinMode mode) {
    validate_rho(p);
    const double r = std::abs(z);
    if (!(r > 0.0)) throw std::domain_error("mellin_log_integral: z must be nonzero");
    const double rho = p.rho;

    if (mode == MellinMode::closed_form) {
        const double theta = wrap_two_pi(principal_arg(z));
        return c_rho(p) * std::pow(r, rho) * std::cos(rho * (theta - pi));
    }

    // Quadrature route, independent of the closed form. Split at t = r and
    // substitute away the algebraic endpoint singularities:
    //   t in (0, r]:   t = r w^{1/rho}   -> (r^rho/rho) int_0^1 [-(log w)/rho + log|w^{1/rho} - c|] dw
    //   t in [r, inf): t = r / w^{q},    q = 1/(1-rho)
    //                  -> r^rho q int_0^1 log|1 - c w^q| / w^q dw
    // with c = z/r on the unit circle.
    const complex c = z / r;
    const QuadratureSpec spec{1e-10, 1e-10, 20000};

    const double inv_rho = 1.0 / rho;
    auto inner = [&](double w) {
        return -std::log(w) * inv_rho + std::log(std::abs(c - std::pow(w, inv_rho)));
    };
    const double part_inner = std::pow(r, rho) * inv_rho * integrate(inner, 0.0, 1.0, spec);

    const double q = 1.0 / (1.0 - rho);
    auto outer = [&](double w) { return log_ratio(c, std::pow(w, q)); };
    const double part_outer = std::pow(r, rho) * q * integrate(outer, 0.0, 1.0, spec);

    return part_inner + part_outer;
}

double AngularMeasure::total_weight() const {
    double w = 0.0;
    for (const auto& atom : atoms) w += atom.weight;
    for (const auto& piece : density) w += piece.value * (piece.hi - piece.lo);
    return w;
}

AngularMeasure nu_rho(const Measure& m, RhoParams p) {
    validate_rho(p);
    const double c = c_rho(p);
    const double rho = p.rho;
    AngularMeasure nu;
    for (const Component& comp : m.components()) {
        if (const auto* atom = std::get_if<Atom>(&comp)) {
            const double radius = std::abs(atom->location);
            nu.atoms.push_back({wrap_two_pi(principal_arg(atom->location)),
                                c * atom->mass * std::pow(radius, -rho)});
        } else if (const auto* circle = std::get_if<UniformCircle>(&comp)) {
            nu.density.push_back(
                {0.0, two_pi, c * circle->mass * std::pow(circle->radius, -rho) / two_pi});
        } else if (const auto* tail = std::get_if<ExtremalTail>(&comp)) {
            const double alpha = tail->alpha;
            const double radial_moment = integrate_halfline(
                [&](double r) {
                    return std::pow(r, 1.0 - rho) * detail::rho_alpha_density(r, alpha);
                },
                QuadratureSpec{1e-12, 1e-12, 6000});
            nu.density.push_back({2.0 * alpha, two_pi - 2.0 * alpha,
                                  c * tail->mass_scale * radial_moment});
        } else {
            const auto& tab = std::get<TabulatedDensity>(comp);
            constexpr int kBins = 512;
            for (int b = 0; b < kBins; ++b) {
                const double lo = two_pi * b / kBins;
                const double hi = two_pi * (b + 1) / kBins;
                double mid = 0.5 * (lo + hi);
                if (mid > pi) mid -= two_pi;
                if (mid < tab.angular_grid.front() || mid > tab.angular_grid.back()) continue;
                double radial_moment = 0.0;
                for (std::size_t i = 0; i + 1 < tab.radial_grid.size(); ++i) {
                    radial_moment += integrate(
                        [&](double r) { return std::pow(r, 1.0 - rho) * tab.value_at(r, mid); },
                        tab.radial_grid[i], tab.radial_grid[i + 1],
                        QuadratureSpec{1e-11, 1e-11, 200});
                }
                if (radial_moment > 0.0) nu.density.push_back({lo, hi, c * radial_moment});
            }
        }
    }
    return nu;
}

double h_rho(const AngularMeasure& nu, double theta, RhoParams p) {
    validate_rho(p);
    double h = 0.0;
    for (const auto& atom : nu.atoms) h += atom.weight * phi_rho(theta - atom.angle, p);
    for (const auto& piece : nu.density)
        h += piece.value *
             (phi_rho_antiderivative(theta - piece.lo, p) - phi_rho_antiderivative(theta - piece.hi, p));
    return h;
}

double h_rho(const Measure& m, double theta, RhoParams p) {
    return h_rho(nu_rho(m, p), theta, p);
}

double v_rho_numeric(const Measure& m, complex z, RhoParams p) {
    validate_rho(p);
    const double rho = p.rho;
    if (std::abs(z) == 0.0) return 0.0;

    std::vector<Atom> atoms;
    double circle_part = 0.0;
    for (const Component& comp : m.components()) {
        if (const auto* atom = std::get_if<Atom>(&comp)) {
            if (atom->mass > 0.0) atoms.push_back(*atom);
        } else if (const auto* circle = std::get_if<UniformCircle>(&comp)) {
            // Mellin transform of mass * log^+(|z| s / R) in closed form.
            circle_part += circle->mass * std::pow(std::abs(z) / circle->radius, rho) / (rho * rho);
        } else if (std::holds_alternative<ExtremalTail>(comp)) {
            throw UnboundedSupport("v_rho_numeric: measure support must be bounded");
        } else {
            // midpoint nodes per tabulated cell; plumbing-grade accuracy
            const auto& tab = std::get<TabulatedDensity>(comp);
            for (std::size_t i = 0; i + 1 < tab.radial_grid.size(); ++i) {
                for (std::size_t j = 0; j + 1 < tab.angular_grid.size(); ++j) {
                    const double r0 = tab.radial_grid[i], r1 = tab.radial_grid[i + 1];
                    const double t0 = tab.angular_grid[j], t1 = tab.angular_grid[j + 1];
                    const double rm = std::sqrt(r0 * r1), tm = 0.5 * (t0 + t1);
                    const double mass =
                        tab.value_at(rm, tm) * rm * (r1 - r0) * (t1 - t0);
                    if (mass > 0.0) atoms.push_back({std::polar(rm, tm), mass});
                }
            }
        }
    }

    if (atoms.empty()) return circle_part;

    // v_rho(z) = int_0^inf u(z s) s^{-rho-1} ds, split at s = 1 with the
    // endpoint substitutions that keep both integrands bounded.
    double mass = 0.0, log_moment = 0.0, min_radius = std::numeric_limits<double>::infinity();
    for (const Atom& a : atoms) {
        mass += a.mass;
        log_moment += a.mass * std::log(std::abs(a.location));
        min_radius = std::min(min_radius, std::abs(a.location));
    }
    complex moments[6] = {};
    for (const Atom& a : atoms) {
        complex acc(a.mass, 0.0);
        for (int n = 1; n <= 6; ++n) {
            acc /= a.location;
            moments[n - 1] += acc;
        }
    }

    const double series_cut = kSeriesCut * min_radius / std::abs(z);
    auto u_over_s = [&](double s) {
        if (s < series_cut) {
            double value = 0.0;
            complex zn = z;
            double sn = 1.0;
            for (int n = 1; n <= 6; ++n) {
                value -= (zn * moments[n - 1]).real() * sn / n;
                zn *= z;
                sn *= s;
            }
            return value;
        }
        double u = 0.0;
        for (const Atom& a : atoms) u += a.mass * log_abs_one_minus(z * s / a.location);
        return u / s;
    };

    const QuadratureSpec spec{1e-9, 1e-9, 20000};
    const double q = 1.0 / (1.0 - rho);
    const double near_part = q * integrate([&](double w) { return u_over_s(std::pow(w, q)); },
                                           0.0, 1.0, spec);

    auto far_remainder = [&](double v) {
        double g = 0.0;
        for (const Atom& a : atoms) g += a.mass * log_abs_one_minus(a.location * v / z);
        return g;
    };
    const double inv_rho = 1.0 / rho;
    const double far_part =
        (mass * std::log(std::abs(z)) - log_moment) * inv_rho + mass * inv_rho * inv_rho +
        inv_rho * integrate([&](double w) { return far_remainder(std::pow(w, inv_rho)); },
                            0.0, 1.0, spec);

    return near_part + far_part + circle_part;
}

double j_rho_kernel(double t, double a, RhoParams p) {
    validate_rho(p);
    validate_a(a);
    const double rho = p.rho;
    const double at = std::fabs(t);
    if (at <= pi) {
        // cancellation-stable forms: the three phi arguments differ by +-a
        const double sin_half = std::sin(0.5 * rho * a);
        const double one_minus_cos = 2.0 * sin_half * sin_half;  // 1 - cos(rho a)
        if (at >= a) return 4.0 * std::cos(rho * (at - pi)) * sin_half * sin_half;
        return 2.0 * std::cos(rho * pi) * std::cos(rho * at) * one_minus_cos +
               2.0 * std::sin(rho * pi) *
                   (std::sin(rho * at) - std::sin(rho * a) * std::cos(rho * at));
    }
    return 2.0 * phi_rho(t, p) - phi_rho(t - a, p) - phi_rho(t + a, p);
}

double concavity_difference(const Measure& m, double a, RhoParams p) {
    validate_rho(p);
    validate_a(a);
    const AngularMeasure nu = nu_rho(m, p);
    return 2.0 * h_rho(nu, 0.0, p) - h_rho(nu, a, p) - h_rho(nu, -a, p);
}

double j_rho_functional(const AngularMeasure& nu, double a, RhoParams p) {
    validate_rho(p);
    validate_a(a);
    double total = 0.0;
    for (const auto& atom : nu.atoms) {
        const double t = atom.angle <= pi ? atom.angle : atom.angle - two_pi;
        total += atom.weight * j_rho_kernel(t, a, p);
    }
    for (const auto& piece : nu.density) {
        auto segment = [&](double shift) {
            return phi_rho_antiderivative(piece.hi + shift, p) -
                   phi_rho_antiderivative(piece.lo + shift, p);
        };
        total += piece.value * (2.0 * segment(0.0) - segment(-a) - segment(a));
    }
    return total;
}

double kernel_limit(double t, double a) {
    validate_a(a);
    if (std::fabs(t) > pi + 1e-12) throw std::domain_error("kernel_limit: |t| must be <= pi");
    // Richardson in rho^2: halving rho divides the correction terms by 4, 16.
    const double rho0 = 1e-2;
    double x[3];
    for (int k = 0; k < 3; ++k) {
        const double rho = rho0 / (1 << k);
        x[k] = j_rho_kernel(t, a, RhoParams{rho}) / (rho * rho);
    }
    const double y0 = (4.0 * x[1] - x[0]) / 3.0;
    const double y1 = (4.0 * x[2] - x[1]) / 3.0;
    const double z0 = (16.0 * y1 - y0) / 15.0;
    const double max_kernel = std::max(2.0 * a * a, std::fabs(2.0 * a * a - 4.0 * pi * a));
    if (std::fabs(z0 - y1) > 1e-3 * max_kernel)
        throw IllConditioned("kernel_limit: extrapolation residual too large");
    return z0;
}

LimitFit limit_factor_estimate(double a, std::span<const double> t_grid) {
    validate_a(a);
    if (t_grid.empty()) throw std::invalid_argument("limit_factor_estimate: empty grid");
    double num = 0.0, den = 0.0;
    std::vector<double> limits(t_grid.size()), kernels(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        limits[i] = kernel_limit(t_grid[i], a);
        kernels[i] = kernel_J(t_grid[i], KernelParams{a});
        num += limits[i] * kernels[i];
        den += kernels[i] * kernels[i];
    }
    LimitFit fit;
    fit.kappa = num / den;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        fit.max_residual = std::max(fit.max_residual, std::fabs(limits[i] - fit.kappa * kernels[i]));
        fit.max_kernel = std::max(fit.max_kernel, std::fabs(kernels[i]));
    }
    if (fit.max_residual > 1e-3 * fit.max_kernel)
        throw IllConditioned("limit_factor_estimate: fit residual exceeds 1e-3 * max|J|");
    return fit;
}

}  // namespace spl
