#include <doctest.h>

#include <cmath>

#include "spl/json_io.hpp"

using namespace spl;

TEST_CASE("measure parsing") {
    const Measure m = measure_from_json(R"({"components":[
        {"type":"atoms","points":[{"re":0.0,"im":1.0,"mass":0.5},{"re":0.0,"im":-1.0,"mass":0.5}]},
        {"type":"uniform_circle","radius":2.0,"mass":1.0},
        {"type":"extremal_tail","alpha":0.6}
    ]})");
    CHECK(m.components().size() == 4);  // two atoms + circle + tail
    CHECK(m.total_mass() ==
          doctest::Approx(2.0 + (pi - 1.2) / 0.6).epsilon(1e-13));
    CHECK(m.check_symmetry());
}

TEST_CASE("tabulated measure parsing") {
    const Measure m = measure_from_json(R"({"components":[
        {"type":"tabulated","r_grid":[0.5,1.5],"theta_grid":[-1.0,1.0],
         "values":[[0.2,0.2],[0.2,0.2]]}
    ]})");
    CHECK(m.total_mass() == doctest::Approx(0.2 * 2.0 * (2.25 - 0.25) / 2.0).epsilon(1e-12));
}

TEST_CASE("strict parsing: unknown keys are errors") {
    CHECK_THROWS_AS(measure_from_json(R"({"components":[],"extra":1})"), std::invalid_argument);
    CHECK_THROWS_AS(
        measure_from_json(R"({"components":[{"type":"uniform_circle","radius":1.0,"mass":1.0,"hue":3}]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        measure_from_json(R"({"components":[{"type":"atoms","points":[{"re":1,"im":0,"mass":1,"x":2}]}]})"),
        std::invalid_argument);
    CHECK_THROWS_AS(measure_from_json(R"({"components":[{"type":"wedge"}]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(measure_from_json("not json"), std::invalid_argument);
}

TEST_CASE("measure round trip") {
    const Measure m = measure_from_json(R"({"components":[
        {"type":"atoms","points":[{"re":1.5,"im":0.25,"mass":0.125}]},
        {"type":"extremal_tail","alpha":0.7,"mass_scale":0.3}
    ]})");
    const Measure back = measure_from_json(measure_to_json(m));
    CHECK(back.total_mass() == doctest::Approx(m.total_mass()).epsilon(1e-15));
    for (double t : {0.3, 1.0, 2.2})
        CHECK(back.sector_mass(t) == doctest::Approx(m.sector_mass(t)).epsilon(1e-15));
}

TEST_CASE("polynomial parsing") {
    const PositivePolynomial p = polynomial_from_json(R"({"coefficients":[1.0,0.0,1.0]})");
    CHECK(p.degree() == 2);
    CHECK_THROWS_AS(polynomial_from_json(R"({"coeffs":[1,1]})"), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_from_json(R"({"coefficients":[1,1],"name":"q"})"),
                    std::invalid_argument);

    const PositivePolynomial inline_poly = polynomial_from_csv("1, 0, 0.5,2");
    CHECK(inline_poly.coefficients() == std::vector<double>({1.0, 0.0, 0.5, 2.0}));
    CHECK_THROWS_AS(polynomial_from_csv("1,zebra,2"), std::invalid_argument);
    CHECK_THROWS_AS(polynomial_from_csv(""), std::invalid_argument);
}
