#include <doctest.h>

#include <cmath>
#include <random>

#include "spl/detail/extremal_density.hpp"
#include "spl/quadrature.hpp"

using namespace spl;

TEST_CASE("polynomial and trigonometric integrals") {
    CHECK(integrate([](double x) { return x; }, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, pi) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("radial tail density mapped to [0,1] integrates to 1/(2 alpha)") {
    // antiderivative of r rho_alpha is (1/(2 alpha)) r^p/(1+r^p), so the
    // half-line integral is 1/(2 alpha); here alpha = pi/4 gives 2/pi.
    const double alpha = pi / 4;
    auto f = [&](double s) {
        const double r = s / (1.0 - s);
        const double jacobian = 1.0 / ((1.0 - s) * (1.0 - s));
        return r * detail::rho_alpha_density(r, alpha) * jacobian;
    };
    CHECK(integrate(f, 0.0, 1.0, QuadratureSpec{1e-12, 1e-12, 4000}) ==
          doctest::Approx(2.0 / pi).epsilon(1e-9));
}

TEST_CASE("half-line integrals") {
    CHECK(integrate_halfline([](double r) { return std::exp(-r); }) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_halfline([](double r) { return 1.0 / (1.0 + r * r); }) ==
          doctest::Approx(pi / 2).epsilon(1e-9));
}

TEST_CASE("half-line log kernel against the transform closed form") {
    // quadrature on one side, c_rho 2^rho cos(rho pi) on the other; the pair
    // cross-validates both implementations
    const double rho = 0.3;
    auto f = [&](double t) {
        if (t <= 0.0) return 0.0;
        return std::log(std::fabs(1.0 - 2.0 / t)) * std::pow(t, rho - 1.0);
    };
    const double expected = pi / (rho * std::sin(pi * rho)) * std::pow(2.0, rho) *
                            std::cos(rho * pi);
    const double got = integrate_halfline(f, QuadratureSpec{1e-9, 1e-9, 20000});
    CHECK(std::fabs(got - expected) < 1e-6);
}

TEST_CASE("linearity over random polynomials") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a0 = coeff(gen), a1 = coeff(gen), a2 = coeff(gen);
        const double b0 = coeff(gen), b1 = coeff(gen), b2 = coeff(gen);
        const double lam = coeff(gen), mu = coeff(gen);
        auto f = [&](double x) { return a0 + a1 * x + a2 * x * x; };
        auto g = [&](double x) { return b0 + b1 * x + b2 * x * x; };
        auto combo = [&](double x) { return lam * f(x) + mu * g(x); };
        const double lhs = integrate(combo, 0.0, 1.0);
        const double rhs = lam * integrate(f, 0.0, 1.0) + mu * integrate(g, 0.0, 1.0);
        CHECK(std::fabs(lhs - rhs) < 2e-10);
    }
}

TEST_CASE("interval additivity") {
    auto f = [](double x) { return std::exp(x) * std::cos(3.0 * x); };
    const double whole = integrate(f, 0.0, 2.0);
    const double split = integrate(f, 0.0, 0.37) + integrate(f, 0.37, 2.0);
    CHECK(std::fabs(whole - split) < 2e-10);
}

TEST_CASE("half-line agrees with compact integration for compactly supported f") {
    auto f = [](double r) { return r < pi ? std::sin(r) : 0.0; };
    const double halfline = integrate_halfline(f);
    const double compact = integrate([](double r) { return std::sin(r); }, 0.0, pi);
    CHECK(std::fabs(halfline - compact) < 2e-8);
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 1.0), std::invalid_argument);
    // 1/t is not integrable at 0: the budget must run out
    CHECK_THROWS_AS(integrate([](double t) { return 1.0 / t; }, 0.0, 1.0,
                              QuadratureSpec{1e-10, 1e-10, 60}),
                    NonConvergence);
}
