#include <random>

#include "doctest.h"
#include "torussym/domain.hpp"

using namespace torussym;

TEST_CASE("catalog membership spot checks") {
    CHECK(DomainSpec::polydisk({1, 1}).contains({Complex(0.5, 0), Complex(0.5, 0)}));
    CHECK_FALSE(DomainSpec::polydisk({1, 1}).contains({Complex(1, 0), Complex(0, 0)}));
    CHECK_FALSE(DomainSpec::exp_profile_family(0).contains({Complex(0, 0), Complex(2, 0)}));
    CHECK(DomainSpec::exp_profile_family(0).contains({Complex(0, 0), Complex(0.9, 0)}));
    CHECK(DomainSpec::quasi_circular_cubic().contains({Complex(1, 0), Complex(1, 0)}));
    CHECK_FALSE(DomainSpec::quasi_circular_cubic().contains({Complex(1.5, 0), Complex(0, 0)}));
    CHECK(DomainSpec::ball(2, 1.0).contains({Complex(0.5, 0), Complex(0.5, 0)}));
    CHECK_FALSE(DomainSpec::ball(2, 1.0).contains({Complex(0.8, 0), Complex(0.8, 0)}));
    CHECK_THROWS(DomainSpec::ball(2, 1.0).contains({Complex(0, 0)}));
}

TEST_CASE("polydisk difference = outer minus closed inner") {
    DomainSpec d = DomainSpec::polydisk_difference({2, 2}, {1, 1});
    DomainSpec outer = DomainSpec::polydisk({2, 2});
    auto closed_inner = [](const Point& z) {
        return std::abs(z[0]) <= 1.0 && std::abs(z[1]) <= 1.0;
    };
    for (double x : {0.1, 0.9, 1.0, 1.3, 1.9, 2.1})
        for (double y : {0.1, 1.0, 1.5, 2.1}) {
            Point z = {Complex(x, 0), Complex(0, y)};
            CHECK(d.contains(z) == (outer.contains(z) && !closed_inner(z)));
        }
}

TEST_CASE("punctured ball differs from ball exactly at the removed point") {
    Point p = {Complex(0.25, 0), Complex(0, 0.25)};
    DomainSpec punct = DomainSpec::punctured_ball(2, 1.0, p);
    DomainSpec ball = DomainSpec::ball(2, 1.0);
    CHECK_FALSE(punct.contains(p));
    CHECK(ball.contains(p));
    CHECK(punct.contains({Complex(0.25, 0), Complex(0, 0.26)}));
    CHECK_FALSE(punct.equals_interior_of_closure());
    CHECK(ball.equals_interior_of_closure());
}

TEST_CASE("declared actions are exact symmetries (catalog property)") {
    // exercised with exact membership, no tolerance
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    std::vector<DomainSpec> catalog;
    catalog.push_back(DomainSpec::polydisk({1, 1}));
    catalog.push_back(DomainSpec::ball(2, 1.0));
    catalog.push_back(DomainSpec::sheared_ball());
    catalog.push_back(DomainSpec::translated_disk_product(Complex(0.5, 0), 1.0, 1.0));
    catalog.push_back(DomainSpec::quasi_circular_cubic());
    catalog.push_back(DomainSpec::mixed_quasi_reinhardt());
    catalog.push_back(DomainSpec::polydisk_difference({2, 2}, {1, 1}));
    catalog.push_back(DomainSpec::exp_profile_family(0));
    for (const DomainSpec& spec : catalog) {
        REQUIRE(spec.declared_action().has_value());
        const TorusAction& A = *spec.declared_action();
        int tested = 0;
        for (int trial = 0; tested < 10000 && trial < 2000000; ++trial) {
            Point z(static_cast<size_t>(spec.dimension()));
            for (int j = 0; j < spec.dimension(); ++j) {
                double b = spec.modulus_bounds()[static_cast<size_t>(j)].value_or(2.0);
                z[static_cast<size_t>(j)] = Complex(b * u(rng), b * u(rng));
            }
            if (!spec.contains(z)) continue;
            ++tested;
            std::vector<Complex> lambda(static_cast<size_t>(A.rank()));
            for (auto& l : lambda) l = std::polar(1.0, ang(rng));
            CHECK(spec.contains(apply_torus(A, lambda, z)));
        }
        CHECK(tested == 10000);
    }
}

TEST_CASE("parse_complex") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0));
    CHECK(parse_complex("1+2i") == Complex(1, 2));
    CHECK(parse_complex("-0.5-i") == Complex(-0.5, -1));
    CHECK(parse_complex("3i") == Complex(0, 3));
    CHECK_THROWS_AS(parse_complex("nope"), ConfigError);
}

TEST_CASE("config parsing") {
    DomainSpec p = parse_domain_config("type = polydisk\nradii = 1, 0.5\n");
    CHECK(p.dimension() == 2);
    CHECK(p.contains({Complex(0.9, 0), Complex(0.4, 0)}));

    DomainSpec b = parse_domain_config("# a ball\ntype = ball\ndim = 2\nradii = 1\n");
    CHECK(b.dimension() == 2);

    DomainSpec e = parse_domain_config("type = exp_profile\nk = 1\n");
    CHECK(e.contains({Complex(3, 0), Complex(0.1, 0)}));

    DomainSpec t = parse_domain_config(
        "type = translated_disk_product\ncenter = 0.5\nradii = 1, 1\n");
    CHECK(t.contains({Complex(1.2, 0), Complex(0, 0)}));

    DomainSpec m = parse_domain_config(
        "type = linear_image_ball\ndim = 2\nmatrix = 1, 1, 0, 1\n");
    CHECK(m.dimension() == 2);

    CHECK_THROWS_AS(parse_domain_config("type = polydisk\nradii = 1,1\nwat = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_domain_config("type = polydisk\nradii = 1\nradii = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_domain_config("radii = 1,1\n"), ConfigError);
    CHECK_THROWS_AS(parse_domain_config("type = hypercube\n"), ConfigError);
}
