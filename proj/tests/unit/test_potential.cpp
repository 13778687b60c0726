#include <doctest.h>

#include <cmath>
#include <random>

#include "spl/extremal.hpp"
#include "spl/poly.hpp"
#include "spl/potential.hpp"

using namespace spl;

TEST_CASE("split-kernel potential of the unit circle and an atom") {
    const Measure circle({UniformCircle{1.0, 1.0}});
    CHECK(log_potential(circle, complex(2.0, 0.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(log_potential(circle, complex(0.5, 0.0)) == doctest::Approx(0.0).epsilon(1e-14));

    const Measure minus_one({Atom{complex(-1.0, 0.0), 1.0}});
    CHECK(log_potential(minus_one, complex(1.0, 0.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("normalized potential values") {
    const Measure minus_one({Atom{complex(-1.0, 0.0), 1.0}});
    CHECK(normalized_potential(minus_one, complex(0.0, 1.0)) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));

    const Measure circle({UniformCircle{1.0, 1.0}});
    CHECK(normalized_potential(circle, complex(2.0, 0.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));

    // empirical measure of z^2+1 at z=3: (1/2) log|1-3/i| + (1/2) log|1-3/(-i)|
    const Measure quad = empirical_measure(PositivePolynomial({1.0, 0.0, 1.0}));
    CHECK(normalized_potential(quad, complex(3.0, 0.0)) ==
          doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-13));
}

TEST_CASE("potential is -inf exactly on atoms") {
    const Measure m({Atom{complex(0.0, 1.0), 0.5}, Atom{complex(0.0, -1.0), 0.5}});
    CHECK(normalized_potential(m, complex(0.0, 1.0)) == -std::numeric_limits<double>::infinity());
    CHECK(std::isfinite(normalized_potential(m, complex(0.0, 0.99))));
}

TEST_CASE("radial majorization verdicts") {
    const Measure quad = empirical_measure(PositivePolynomial({1.0, 0.0, 1.0}));
    CHECK(check_radial_majorization(quad, 1e-12).passed);

    // measure concentrated at zeta = 1 violates the hypothesis; at r = 1/2 the
    // slack at theta = pi is log(1/2) - log(3/2)
    const Measure at_one({Atom{complex(1.0, 0.0), 1.0}});
    const double radii[] = {0.5};
    const double angles[] = {0.0, pi};
    const MajorizationReport rep = check_radial_majorization(at_one, radii, angles, 1e-9);
    CHECK_FALSE(rep.passed);
    CHECK(rep.worst_slack ==
          doctest::Approx(std::log(0.5) - std::log(1.5)).epsilon(1e-13));
    CHECK(rep.worst_point.real() == doctest::Approx(-0.5).epsilon(1e-13));

    CHECK(check_radial_majorization(mu_alpha(ExtremalSpec{pi / 4}), 1e-9).passed);
}

TEST_CASE("normalized potential vanishes at the origin") {
    CHECK(normalized_potential(Measure({Atom{complex(2.0, 1.0), 1.0}}), complex(0.0, 0.0)) == 0.0);
    CHECK(normalized_potential(Measure({UniformCircle{3.0, 1.0}}), complex(0.0, 0.0)) == 0.0);
    CHECK(normalized_potential(mu_alpha(ExtremalSpec{0.8}), complex(0.0, 0.0)) == 0.0);
}

TEST_CASE("split kernel equals an independent evaluation and differs from the "
          "normalized potential by a constant") {
    const Measure m({Atom{std::polar(0.5, 2.0), 0.25}, Atom{std::polar(0.5, -2.0), 0.25},
                     Atom{std::polar(2.0, 2.8), 0.2}, Atom{std::polar(2.0, -2.8), 0.2},
                     UniformCircle{0.8, 0.1}});
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    double reference_gap = 0.0;
    for (int k = 0; k < 100; ++k) {
        const complex z(re(gen), re(gen));
        // independent split-kernel sum
        double split = 0.0;
        for (const Component& c : m.components()) {
            if (const auto* atom = std::get_if<Atom>(&c)) {
                split += std::abs(atom->location) <= 1.0
                             ? atom->mass * std::log(std::abs(z - atom->location))
                             : atom->mass * std::log(std::abs(1.0 - z / atom->location));
            } else {
                const auto& circle = std::get<UniformCircle>(c);
                split += circle.mass * std::log(std::max(std::abs(z), circle.radius));
            }
        }
        CHECK(log_potential(m, z) == doctest::Approx(split).epsilon(1e-12));
        const double gap = log_potential(m, z) - normalized_potential(m, z);
        if (k == 0) reference_gap = gap;
        CHECK(std::fabs(gap - reference_gap) < 1e-8);
    }
}

TEST_CASE("circle potential is log^+|z|") {
    const Measure circle({UniformCircle{1.0, 1.0}});
    for (double r : logspace(0.05, 20.0, 24)) {
        for (double t : {0.0, 1.0, 2.5}) {
            const complex z = std::polar(r, t);
            CHECK(normalized_potential(circle, z) ==
                  doctest::Approx(std::max(0.0, std::log(r))).epsilon(1e-10));
        }
    }
}

TEST_CASE("positive-coefficient polynomials always pass radial majorization") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto poly = make_family(PolyFamily::random_loguniform, 2 + int(seed % 11), 900 + seed);
        const MajorizationReport rep = check_radial_majorization(empirical_measure(poly), 1e-12);
        CHECK(rep.passed);
    }
}

TEST_CASE("slack on the positive real axis is exactly zero") {
    const Measure m = empirical_measure(PositivePolynomial({2.0, 1.0, 3.0}));
    const double radii[] = {0.3, 1.0, 2.7};
    const double angles[] = {0.0};
    const MajorizationReport rep = check_radial_majorization(m, radii, angles, 1e-15);
    CHECK(rep.worst_slack == 0.0);
    CHECK(rep.passed);
}

TEST_CASE("pure extremal measures use the closed form; mixed ones quadrature") {
    const ExtremalSpec spec{0.8};
    const Measure mu = mu_alpha(spec);
    REQUIRE(mu.pure_extremal().has_value());
    const double scale = spec.alpha / pi;
    // closed form and the generic tail quadrature agree
    for (const complex z : {complex(0.4, 0.2), complex(-1.2, 0.7), complex(0.0, 1.6)}) {
        const double closed = normalized_potential(mu, z);
        double generic = 0.0;
        for (const Component& c : mu.components()) {
            if (const auto* atom = std::get_if<Atom>(&c))
                generic += atom->mass * log_abs_one_minus(z / atom->location);
        }
        const Measure tail_only({ExtremalTail{spec.alpha, scale}});
        generic += normalized_potential(tail_only, z);
        CHECK(std::fabs(closed - generic) < 1e-6);
        CHECK(closed == doctest::Approx(scale * u_alpha(z, spec)).epsilon(1e-14));
    }
}
