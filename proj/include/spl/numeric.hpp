#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace spl {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// Principal argument in (-pi, pi]; the negative real axis maps to +pi.
inline double principal_arg(complex z) {
    double a = std::atan2(z.imag(), z.real());
    if (a <= -pi) a = pi;
    return a;
}

/// Reduce an angle into [0, 2*pi).
inline double wrap_two_pi(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0) t += two_pi;
    if (t >= two_pi) t -= two_pi;
    return t;
}

/// log|1 - w| with full relative accuracy for small |w|, no overflow for
/// large |w|, and -inf exactly at w = 1.
inline double log_abs_one_minus(complex w) {
    const double aw = std::abs(w);
    if (aw < 0.5) {
        return 0.5 * std::log1p(-2.0 * w.real() + aw * aw);
    }
    if (aw > 2.0) {
        const complex inv(w.real() / (aw * aw), -w.imag() / (aw * aw));
        return std::log(aw) + log_abs_one_minus(inv);
    }
    return std::log(std::abs(1.0 - w));
}

/// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

/// n points geometrically spaced between positive endpoints.
inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> out = linspace(std::log(lo), std::log(hi), n);
    for (double& v : out) v = std::exp(v);
    return out;
}

}  // namespace spl
