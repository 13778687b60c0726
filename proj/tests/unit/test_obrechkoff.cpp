#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "spl/extremal.hpp"
#include "spl/obrechkoff.hpp"
#include "spl/poly.hpp"

using namespace spl;

namespace {

// Test-side oracle: int_0^a m(t) dt for a purely atomic measure by direct
// summation over folded atom angles.
double brute_step_integral(const Measure& m, double a) {
    double acc = 0.0;
    for (const Atom& atom : m.atoms()) {
        const double t = std::fabs(principal_arg(atom.location));
        if (t < a) acc += atom.mass * (a - t);
    }
    return acc;
}

Measure random_atomic_probability(std::uint64_t seed, int count) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_real_distribution<double> radius(0.3, 2.0);
    std::uniform_real_distribution<double> mass(0.1, 1.0);
    std::vector<double> masses(count);
    double total = 0.0;
    for (double& w : masses) total += (w = mass(gen));
    std::vector<Component> comps;
    for (int k = 0; k < count; ++k)
        comps.push_back(Atom{std::polar(radius(gen), angle(gen)), masses[k] / total});
    return Measure(std::move(comps));
}

}  // namespace

TEST_CASE("averaged sector mass") {
    const Measure circle({UniformCircle{1.0, 1.0}});
    for (double a : {0.2, 1.234, pi}) {
        CHECK(averaged_mass(circle, a) == doctest::Approx(a / two_pi).epsilon(1e-14));
    }

    const Measure pair({Atom{complex(0.0, 1.0), 0.5}, Atom{complex(0.0, -1.0), 0.5}});
    CHECK(averaged_mass(pair, pi) == doctest::Approx(0.5).epsilon(1e-14));

    // mu_alpha at alpha = pi/6, a = 2 alpha: jump 2 alpha/pi at alpha makes the
    // average alpha/pi, tight against a/(2 pi)
    const Measure mu = mu_alpha(ExtremalSpec{pi / 6});
    CHECK(averaged_mass(mu, pi / 3) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
}

TEST_CASE("averaged bound reports") {
    const Measure circle({UniformCircle{1.0, 1.0}});
    const auto grid = make_a_grid(100);
    const InequalityReport rep = check_theorem1(circle, grid, 1e-12);
    CHECK(rep.passed);
    CHECK(rep.hypothesis_violations.empty());
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(std::fabs(rep.rhs[k] - rep.lhs[k]) < 1e-12);  // equality family

    const Measure z7 = empirical_measure(make_family(PolyFamily::binomial_d, 7, 0));
    const InequalityReport rep7 = check_theorem1(z7, grid, 1e-12);
    CHECK(rep7.passed);
    for (std::size_t k = 0; k < grid.size(); ++k)
        CHECK(rep7.lhs[k] == doctest::Approx(brute_step_integral(z7, grid[k]) / grid[k])
                                 .epsilon(1e-12));

    const Measure violator({Atom{complex(1.0, 0.0), 1.0}});
    const InequalityReport bad = check_theorem1(violator, grid, 1e-12);
    CHECK_FALSE(bad.passed);
    CHECK(bad.worst_margin < -0.5);  // m == 1 makes the lhs exceed a/(2 pi) badly
    CHECK(bad.hypothesis_violations.empty());  // mass 1, symmetric: only the bound fails
}

TEST_CASE("pointwise sector bound") {
    const Measure z5 = empirical_measure(make_family(PolyFamily::binomial_d, 5, 0));
    const double alpha5[] = {pi / 5};
    const InequalityReport rep = check_obrechkoff(z5, alpha5, 1e-12);
    CHECK(rep.passed);
    CHECK(rep.rhs[0] - rep.lhs[0] == 0.0);  // equality member of the family

    const Measure circle({UniformCircle{1.0, 1.0}});
    const double quarter[] = {pi / 4};
    const InequalityReport c = check_obrechkoff(circle, quarter, 1e-12);
    CHECK(c.lhs[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(c.rhs[0] == doctest::Approx(0.5).epsilon(1e-14));

    const Measure mu = mu_alpha(ExtremalSpec{0.7});
    const double at[] = {0.7};
    const InequalityReport e = check_obrechkoff(mu, at, 1e-12);
    CHECK(std::fabs(e.rhs[0] - e.lhs[0]) < 1e-14);

    CHECK_THROWS_AS(check_obrechkoff(circle, std::vector<double>{pi / 2}, 1e-9),
                    std::domain_error);
}

TEST_CASE("chain of inequalities") {
    // uniform circle, alpha = pi/6: m(t) = t/pi gives links 1/6, 1/4, 1/3, 1/3
    const Measure circle({UniformCircle{1.0, 1.0}});
    const ChainReport chain = check_chain(circle, pi / 6, 1e-12);
    CHECK(chain.values[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(chain.values[1] == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(chain.values[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(chain.values[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(chain.passed);

    // z^4 + 1 at alpha = pi/4: every link is tight at 1/2
    const Measure z4 = empirical_measure(make_family(PolyFamily::binomial_d, 4, 0));
    const ChainReport tight = check_chain(z4, pi / 4, 1e-12);
    for (double v : tight.values) CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(tight.passed);

    // mu_alpha at its own alpha: first and last links tight
    const ChainReport mu_chain = check_chain(mu_alpha(ExtremalSpec{0.5}), 0.5, 1e-12);
    CHECK(std::fabs(mu_chain.margins[0]) < 1e-13);
    CHECK(std::fabs(mu_chain.margins[2]) < 1e-13);
    CHECK(mu_chain.passed);
}

TEST_CASE("limit kernel values") {
    const KernelParams params{0.9};
    const double a = params.a;
    CHECK(kernel_J(pi, params) == doctest::Approx(2 * a * a).epsilon(1e-15));
    CHECK(kernel_J(a, params) == doctest::Approx(2 * a * a).epsilon(1e-12));
    CHECK(kernel_J(std::nextafter(a, 0.0), params) ==
          doctest::Approx(2 * a * a).epsilon(1e-12));
    CHECK(kernel_J(0.0, params) == doctest::Approx(2 * a * a - 4 * pi * a).epsilon(1e-15));
    for (double t : {0.1, 0.5, 0.89})
        CHECK(kernel_J(-t, params) == kernel_J(t, params));
    double prev = kernel_J(0.0, params);
    for (int k = 1; k <= 20; ++k) {
        const double v = kernel_J(a * k / 20, params);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(kernel_J(3.5, params), std::domain_error);
    CHECK_THROWS_AS(kernel_J(0.0, KernelParams{0.0}), std::domain_error);
}

TEST_CASE("kernel functional values") {
    const Measure circle({UniformCircle{1.0, 1.0}});
    for (double a : {0.4, 1.1, 2.9})
        CHECK(std::fabs(j_functional(circle, KernelParams{a})) < 1e-13);  // equality case

    const Measure pair({Atom{complex(0.0, 1.0), 0.5}, Atom{complex(0.0, -1.0), 0.5}});
    const double a4 = pi / 4;
    CHECK(j_functional(pair, KernelParams{a4}) ==
          doctest::Approx(2 * a4 * a4).epsilon(1e-14));  // J(pi/2) = 2a^2 beyond the elbow

    const Measure at_one({Atom{complex(1.0, 0.0), 1.0}});
    const double a2 = pi / 2;
    CHECK(j_functional(at_one, KernelParams{a2}) ==
          doctest::Approx(2 * a2 * a2 - 4 * pi * a2).epsilon(1e-14));  // J(0) < 0
}

TEST_CASE("integration-by-parts identity") {
    // frozen two-atom case: atoms at e^{+-i pi/5}, a = pi/2; both sides equal
    // J(pi/5) = 4 pi^2/5 - 2 pi^2 + pi^2/2
    const Measure pair({Atom{std::polar(1.0, pi / 5), 0.5}, Atom{std::polar(1.0, -pi / 5), 0.5}});
    const KernelParams half_pi{pi / 2};
    const double frozen = 4.0 * pi * pi / 5.0 - 2.0 * pi * pi + pi * pi / 2.0;
    CHECK(j_functional(pair, half_pi) == doctest::Approx(frozen).epsilon(1e-14));
    const double rhs = 2.0 * half_pi.a * half_pi.a -
                       4.0 * pi * brute_step_integral(pair, half_pi.a);
    CHECK(std::fabs(frozen - rhs) < 1e-12);
    CHECK(ibp_identity_check(pair, half_pi, 1e-12));

    const Measure circle({UniformCircle{1.0, 1.0}});
    CHECK(ibp_identity_check(circle, KernelParams{pi / 3}, 1e-12));

    for (int count : {1, 2, 5, 20}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Measure m = random_atomic_probability(40 * count + seed, count);
            CHECK(ibp_identity_check(m, KernelParams{1.0}, 1e-10));
            // brute Stieltjes sum against the library functional
            double brute = 0.0;
            for (const Atom& atom : m.atoms())
                brute += atom.mass * kernel_J(std::fabs(principal_arg(atom.location)),
                                              KernelParams{1.0});
            CHECK(j_functional(m, KernelParams{1.0}) == doctest::Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("equality witnesses") {
    const Measure mu = mu_alpha(ExtremalSpec{0.6});
    const double grid[] = {1.2};  // a = 2 alpha
    const InequalityReport rep = check_theorem1(mu, grid, 1e-9);
    CHECK(std::fabs(rep.rhs[0] - rep.lhs[0]) < 1e-9);

    const Measure z6 = empirical_measure(make_family(PolyFamily::binomial_d, 6, 0));
    const double alpha6[] = {pi / 6};
    const InequalityReport o6 = check_obrechkoff(z6, alpha6, 1e-12);
    CHECK(o6.rhs[0] - o6.lhs[0] == 0.0);
}

TEST_CASE("averaged bound holds for random positive-coefficient polynomials") {
    const auto grid = make_a_grid(200);
    std::mt19937_64 gen(5150);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(gen() % 39);
        const Measure mu = empirical_measure(make_family(PolyFamily::random_loguniform, d, gen()));
        const InequalityReport rep = check_theorem1(mu, grid, 1e-10);
        CHECK(rep.passed);
        CHECK(rep.hypothesis_violations.empty());
        // nondecreasing m + averaged bound at a = 2 alpha implies the sector bound
        const InequalityReport obr = check_obrechkoff(
            mu, std::vector<double>{0.3, 0.7, 1.1, 1.5}, 1e-10);
        CHECK(obr.passed);
    }
}
