#pragma once

#include <span>
#include <vector>

#include "spl/measure.hpp"

namespace spl {

struct RhoParams {
    double rho = 0.5;  // in (0, 1)
};

/// Finite measure on the angle circle [0, 2 pi): atoms plus a
/// piecewise-constant density.
struct AngularMeasure {
    struct AngularAtom {
        double angle;   // in [0, 2 pi)
        double weight;  // >= 0
    };
    struct DensityPiece {
        double lo, hi;  // [lo, hi] within [0, 2 pi]
        double value;   // constant density >= 0
    };
    std::vector<AngularAtom> atoms;
    std::vector<DensityPiece> density;

    double total_weight() const;
};

/// c_rho = pi / (rho sin(pi rho)); diverges like 1/rho^2 as rho -> 0.
double c_rho(RhoParams p);

/// 2 pi-periodic extension of cos(rho (theta - pi)), theta in [0, 2 pi).
double phi_rho(double theta, RhoParams p);

/// F(x) = int_0^x phi_rho(s) ds for arbitrary real x (periodic pieces summed
/// in closed form); the tool behind exact convolutions against densities.
double phi_rho_antiderivative(double x, RhoParams p);

enum class MellinMode { closed_form, quadrature };

/// int_0^infty log|1 - z/t| t^{rho-1} dt. closed_form returns
/// c_rho r^rho cos(rho (theta - pi)) with theta = Arg z in [0, 2 pi);
/// quadrature evaluates the improper integral independently (domain split at
/// t = |z|, endpoint substitutions remove the algebraic singularities).
double mellin_log_integral(complex z, RhoParams p, MellinMode mode);

/// nu_rho(E) = c_rho int_{zeta/|zeta| in E} |zeta|^{-rho} dmu(zeta):
/// atoms map to angular atoms; density components to angular densities by
/// radial integration.
AngularMeasure nu_rho(const Measure& m, RhoParams p);

/// h_rho(theta) = int phi_rho(theta - t) dnu_rho(t); exact sums for atoms,
/// closed-form interval integrals for constant density pieces.
double h_rho(const AngularMeasure& nu, double theta, RhoParams p);
double h_rho(const Measure& m, double theta, RhoParams p);

/// v_rho(z) = int_0^infty u(z/t) t^{rho-1} dt for the normalized potential u
/// of m; equals |z|^rho h_rho(Arg z) up to quadrature tolerance. Requires
/// bounded support (no ExtremalTail components).
double v_rho_numeric(const Measure& m, complex z, RhoParams p);

/// J_rho(t) = 2 phi_rho(t) - phi_rho(t - a) - phi_rho(t + a), evaluated in a
/// cancellation-stable trigonometric form for |t| <= pi.
double j_rho_kernel(double t, double a, RhoParams p);

/// 2 h_rho(0) - h_rho(a) - h_rho(-a).
double concavity_difference(const Measure& m, double a, RhoParams p);

/// int J_rho(t) dnu_rho(t): the independent evaluation path for
/// concavity_difference.
double j_rho_functional(const AngularMeasure& nu, double a, RhoParams p);

/// Richardson-extrapolated limit of J_rho(t)/rho^2 over rho in
/// {1e-2, 5e-3, 2.5e-3} (expansion in rho^2). Throws IllConditioned when the
/// extrapolation tail exceeds 1e-3 * max|J|.
double kernel_limit(double t, double a);

struct LimitFit {
    double kappa = 0.0;         // least-squares constant: limit ~= kappa * J
    double max_residual = 0.0;  // max_t |limit(t) - kappa J(t)|
    double max_kernel = 0.0;    // max_t |J(t)|
};

/// Fit the single proportionality constant between the extrapolated limit and
/// kernel_J over a t-grid. Throws IllConditioned when max_residual exceeds
/// 1e-3 * max|J|.
LimitFit limit_factor_estimate(double a, std::span<const double> t_grid);

}  // namespace spl
