#pragma once

#include <functional>

#include "spl/errors.hpp"

namespace spl {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;

    /// Tight settings for algebraic identity checks.
    static QuadratureSpec identities() { return {1e-10, 1e-10, 2000}; }
    /// Settings for improper integrals, where endpoint transforms eat accuracy.
    static QuadratureSpec improper() { return {1e-8, 1e-8, 5000}; }
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [lo, hi].
/// Integrable endpoint singularities are fine: nodes stay interior and the
/// worst-error interval is bisected until the global estimate meets
/// max(abs_tol, rel_tol*|I|). Throws InvalidInterval via std::invalid_argument
/// when lo >= hi and NonConvergence when the subdivision budget runs out.
double integrate(const Integrand& f, double lo, double hi,
                 const QuadratureSpec& spec = QuadratureSpec::identities());

/// Improper integral of f over [0, inf) via the substitution r = s/(1-s),
/// delegated to integrate() on [0, 1).
double integrate_halfline(const Integrand& f,
                          const QuadratureSpec& spec = QuadratureSpec::improper());

}  // namespace spl
