#pragma once

#include <cstdint>
#include <vector>

#include "spl/measure.hpp"

namespace spl {

/// Polynomial with nonnegative coefficients, c_0 > 0 and c_d > 0
/// (so the degree is exact and there is no root at the origin).
class PositivePolynomial {
public:
    explicit PositivePolynomial(std::vector<double> coefficients);

    const std::vector<double>& coefficients() const { return coefficients_; }
    int degree() const { return static_cast<int>(coefficients_.size()) - 1; }

    complex eval(complex z) const;
    void eval_with_derivative(complex z, complex& p, complex& dp) const;
    /// sum_k c_k r^k; the natural residual scale at radius r.
    double coefficient_scale(double r) const;

private:
    std::vector<double> coefficients_;
};

struct RootSet {
    std::vector<std::pair<complex, int>> roots;  // (location, multiplicity)
    double residual_bound = 0.0;                 // max |P(root)| / coefficient_scale(|root|)
};

/// All d roots via Aberth-Ehrlich simultaneous iteration with Newton
/// polishing. Conjugate pairs are matched exactly; clusters within
/// max(1e-7, sqrt(tol)) * max(1, |root|) merge into multiplicities.
RootSet find_roots(const PositivePolynomial& p, double tol = 1e-12);

/// Probability measure with an atom of mass m/d at each root of multiplicity m.
Measure empirical_measure(const PositivePolynomial& p);

/// |P(z)| <= P(|z|) at sample_count pseudo-random points (deterministic per seed).
bool check_modulus_bound(const PositivePolynomial& p, int sample_count, std::uint64_t seed);

enum class PolyFamily {
    binomial_d,        // z^d + 1
    random_loguniform  // c_k = exp(U_k), U_k uniform on [-3, 3]
};

PositivePolynomial make_family(PolyFamily kind, int d, std::uint64_t seed);

}  // namespace spl
