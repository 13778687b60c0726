#pragma once

#include <string>
#include <vector>

#include "spl/measure.hpp"

namespace spl {

struct ExtremalSpec {
    double alpha = pi / 4;  // in (0, pi/2)
};

/// log|z^2 + 1|; -inf at z = +-i.
double base_potential(complex z);

/// Folded subharmonic function: base_potential(z^{pi/(2 alpha)}) on the sector
/// |Arg z| < 2 alpha (principal branch), base_potential(|z|^{pi/(2 alpha)})
/// elsewhere. Evaluated in log space, so no overflow at large |z|.
double u_alpha(complex z, ExtremalSpec spec);

/// Radial density (pi/(2 alpha^2)) r^{pi/alpha - 2} (1 + r^{pi/alpha})^{-2}
/// of the sector part of the Riesz measure of u_alpha.
double rho_alpha(double r, ExtremalSpec spec);

struct LambdaMasses {
    double atom_mass_each = 1.0;          // at e^{+-i alpha}
    double sector_mass = 0.0;             // (pi - 2 alpha)/alpha
    double sector_mass_quadrature = 0.0;  // (2 pi - 4 alpha) int_0^inf r rho_alpha dr
    double total = 0.0;                   // 2 + sector_mass = pi/alpha
};

/// Mass bookkeeping of the Riesz measure lambda_alpha; the sector mass is
/// recomputed by quadrature and must agree with the closed form within 1e-6
/// (QuadratureMismatch otherwise).
LambdaMasses lambda_alpha_masses(ExtremalSpec spec);

/// The normalized measure lambda_alpha / (pi/alpha): atoms of mass alpha/pi
/// at e^{+-i alpha} plus the scaled sector tail. Total mass 1.
Measure mu_alpha(ExtremalSpec spec);

/// Equal-mass atomic discretization of mu_alpha: the two atoms stay exact;
/// the tail becomes radial_nodes x angular_nodes product nodes, radially by
/// inverse CDF of the normalized radial law.
Measure discretize_mu_alpha(ExtremalSpec spec, std::size_t radial_nodes = 500,
                            std::size_t angular_nodes = 200);

struct CheckResult {
    std::string name;
    double value = 0.0;      // worst slack / deviation, see name
    double threshold = 0.0;
    std::string worst_location;
    bool passed = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    double tolerance = 0.0;
    bool passed = false;
};

/// Aggregate verification: (i) radial majorization of u_alpha on a grid,
/// (ii) sector-mass equality at alpha, (iii) averaged bound with a zero
/// margin at a = 2 alpha, (iv) the normalized potential of a 1e5-node
/// discretization matches (alpha/pi) u_alpha up to an additive constant.
VerificationReport verify_extremal(ExtremalSpec spec, double tol = 1e-9);

}  // namespace spl
