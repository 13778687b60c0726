#include <doctest.h>

#include <cmath>

#include "spl/extremal.hpp"
#include "spl/obrechkoff.hpp"
#include "spl/quadrature.hpp"

using namespace spl;

TEST_CASE("base potential log|z^2 + 1|") {
    CHECK(base_potential(complex(0.0, 0.0)) == 0.0);
    CHECK(base_potential(complex(1.0, 0.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(base_potential(complex(0.0, 1.0)) == -std::numeric_limits<double>::infinity());
    CHECK(base_potential(complex(1e200, 0.0)) ==
          doctest::Approx(2.0 * std::log(1e200)).epsilon(1e-12));
}

TEST_CASE("folded potential u_alpha") {
    const ExtremalSpec spec{0.55};
    const double p = pi / spec.alpha;

    // positive axis: log(r^p + 1)
    for (double r : {0.3, 1.0, 2.5})
        CHECK(u_alpha(complex(r, 0.0), spec) ==
              doctest::Approx(std::log(std::pow(r, p) + 1.0)).epsilon(1e-13));

    // atom location maps onto a zero of the base potential
    CHECK(u_alpha(std::polar(1.0, spec.alpha), spec) ==
          -std::numeric_limits<double>::infinity());

    // branch continuity across |Arg z| = 2 alpha
    for (double r : {0.4, 1.1, 3.0}) {
        const double inside = u_alpha(std::polar(r, 2.0 * spec.alpha * (1.0 - 1e-12)), spec);
        const double outside = u_alpha(std::polar(r, 2.0 * spec.alpha), spec);
        CHECK(std::fabs(inside - outside) < 1e-10);
        // the sector formula collapses to the radial one on the boundary ray
        const double sector_form =
            0.5 * std::log(std::pow(r, 2.0 * p) + 2.0 * std::pow(r, p) * std::cos(2.0 * pi) + 1.0);
        CHECK(outside == doctest::Approx(sector_form).epsilon(1e-12));
    }

    // off the sector the function is radial: exact equality
    for (double r : {0.4, 1.1, 3.0})
        for (double t : {2.0 * spec.alpha + 0.1, 2.2, pi})
            CHECK(u_alpha(std::polar(r, t), spec) == u_alpha(complex(r, 0.0), spec));

    CHECK(u_alpha(complex(0.0, 0.0), spec) == 0.0);
}

TEST_CASE("radial density rho_alpha") {
    const ExtremalSpec quarter{pi / 4};
    CHECK(rho_alpha(1.0, quarter) == doctest::Approx(2.0 / pi).epsilon(1e-14));
    CHECK_THROWS_AS(rho_alpha(0.0, quarter), std::domain_error);
    CHECK(rho_alpha(1e-8, quarter) < 1e-12);  // exponent p - 2 > 0 kills the origin
    for (double r : logspace(0.01, 100.0, 21)) CHECK(rho_alpha(r, quarter) >= 0.0);

    // int_0^inf r rho_alpha dr = 1/(2 alpha)
    for (double alpha : {0.3, pi / 4, 1.4}) {
        const double integral = integrate_halfline(
            [&](double r) { return r * rho_alpha(r, ExtremalSpec{alpha}); },
            QuadratureSpec{1e-12, 1e-12, 6000});
        CHECK(std::fabs(integral - 1.0 / (2.0 * alpha)) < 1e-8);
    }
}

TEST_CASE("mass bookkeeping for lambda_alpha") {
    const LambdaMasses quarter = lambda_alpha_masses(ExtremalSpec{pi / 4});
    CHECK(quarter.atom_mass_each == 1.0);
    CHECK(quarter.sector_mass == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(quarter.total == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(std::fabs(quarter.sector_mass_quadrature - quarter.sector_mass) < 1e-8);

    const LambdaMasses sixth = lambda_alpha_masses(ExtremalSpec{pi / 6});
    CHECK(sixth.sector_mass == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sixth.total == doctest::Approx(6.0).epsilon(1e-15));

    // alpha -> pi/2: the tail empties and only the two atoms remain
    const LambdaMasses edge = lambda_alpha_masses(ExtremalSpec{pi / 2 - 1e-9});
    CHECK(edge.sector_mass < 1e-6);
    CHECK(edge.total == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("normalized extremal measure mu_alpha") {
    const double alpha = pi / 4;
    const Measure mu = mu_alpha(ExtremalSpec{alpha});
    const auto atoms = mu.atoms();
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[0].mass == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(atoms[1].mass == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mu.sector_mass(alpha) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(mu.check_symmetry());

    // the open sector (alpha, 2 alpha) carries no mass
    for (double t : {1.2 * alpha, 1.5 * alpha, 1.9 * alpha})
        CHECK(mu.sector_mass(t) == doctest::Approx(2.0 * alpha / pi).epsilon(1e-14));
}

TEST_CASE("discrete Laplacian recovers the density at second order") {
    const ExtremalSpec spec{0.9};
    // radial branch point; (1/2 pi) * five-point Laplacian ~ rho_alpha(|z|)
    const complex z = std::polar(1.1, 0.8 * pi);
    auto density_estimate = [&](double h) {
        const double lap =
            (u_alpha(z + complex(h, 0.0), spec) + u_alpha(z - complex(h, 0.0), spec) +
             u_alpha(z + complex(0.0, h), spec) + u_alpha(z - complex(0.0, h), spec) -
             4.0 * u_alpha(z, spec)) /
            (h * h);
        return lap / two_pi;
    };
    const double exact = rho_alpha(std::abs(z), spec);
    const double e1 = std::fabs(density_estimate(0.02) - exact);
    const double e2 = std::fabs(density_estimate(0.01) - exact);
    const double e3 = std::fabs(density_estimate(0.005) - exact);
    CHECK(e1 / e2 > 2.5);
    CHECK(e1 / e2 < 6.0);
    CHECK(e2 / e3 > 2.5);
    CHECK(e2 / e3 < 6.0);

    // inside the free sector the function is harmonic: the Laplacian vanishes
    const complex w = std::polar(0.5, 0.3 * spec.alpha);
    auto harmonic_estimate = [&](double h) {
        return (u_alpha(w + complex(h, 0.0), spec) + u_alpha(w - complex(h, 0.0), spec) +
                u_alpha(w + complex(0.0, h), spec) + u_alpha(w - complex(0.0, h), spec) -
                4.0 * u_alpha(w, spec)) /
               (h * h * two_pi);
    };
    CHECK(std::fabs(harmonic_estimate(0.01)) < 1e-2);
}

TEST_CASE("full verification across alpha values") {
    for (double alpha : {pi / 4, 1.0, pi / 6}) {
        const VerificationReport report = verify_extremal(ExtremalSpec{alpha}, 1e-9);
        CHECK(report.passed);
        for (const CheckResult& check : report.checks) CHECK(check.passed);
    }
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(u_alpha(complex(1.0, 0.0), ExtremalSpec{0.0}), std::domain_error);
    CHECK_THROWS_AS(mu_alpha(ExtremalSpec{pi / 2}), std::domain_error);
    CHECK_THROWS_AS(verify_extremal(ExtremalSpec{-0.3}, 1e-9), std::domain_error);
}
