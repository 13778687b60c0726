#pragma once

#include <cmath>

#include "spl/numeric.hpp"

namespace spl::detail {

// Shared closed forms for the sector-tail radial law. Everything is evaluated
// in log space so large pi/alpha exponents cannot overflow.

inline double tail_exponent(double alpha) { return pi / alpha; }

/// (pi/(2 alpha^2)) r^{p-2} (1 + r^p)^{-2}, p = pi/alpha.
inline double rho_alpha_density(double r, double alpha) {
    const double p = tail_exponent(alpha);
    const double log_r = std::log(r);
    const double log_value = std::log(pi / (2.0 * alpha * alpha)) + (p - 2.0) * log_r -
                             2.0 * softplus(p * log_r);
    return std::exp(log_value);
}

/// G(r) = r^p / (1 + r^p): the normalized radial CDF (2 alpha int_0^r s rho ds).
inline double tail_radial_cdf(double r, double alpha) {
    const double x = tail_exponent(alpha) * std::log(r);
    return 1.0 / (1.0 + std::exp(-x));
}

/// Inverse of tail_radial_cdf.
inline double tail_radial_quantile(double q, double alpha) {
    return std::pow(q / (1.0 - q), 1.0 / tail_exponent(alpha));
}

}  // namespace spl::detail
