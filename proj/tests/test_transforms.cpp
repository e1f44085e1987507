#include <doctest.h>

#include <cmath>

#include "supnorm/transforms.hpp"

using namespace supnorm;

TEST_CASE("test function") {
    TestFunction tf(4, 2);
    CHECK(std::fabs(tf(1e-4)) < 1e-9);
    CHECK_THROWS_AS(TestFunction(5, 2), DomainError);
    CHECK_THROWS_AS(TestFunction(2, 2), DomainError);
}

TEST_CASE("closed forms against quadrature") {
    auto a = dot_transform_closed(TestFunction(10, 2), 4);
    CHECK(a.value == doctest::Approx(7.537585642e-6).epsilon(1e-9));
    CHECK(rel_diff(dot_transform_quadrature(TestFunction(10, 2), 4).value, a.value) <= 1e-8);
    CHECK(rel_diff(dot_transform_quadrature(TestFunction(10, 4), 2).value, dot_transform_closed(TestFunction(10, 4), 2).value) <= 1e-8);
    CHECK(rel_diff(dot_transform_quadrature(TestFunction(12, 2), 6).value, dot_transform_closed(TestFunction(12, 2), 6).value) <= 1e-8);

    TestFunction t42(4, 2);
    CHECK(tilde_transform_closed(t42, 1.0) == doctest::Approx(1 / (400 * M_PI)).epsilon(1e-14));
    CHECK(tilde_transform_closed(t42, Rational(1)).coeff == Rational(1, 400));
    CHECK(rel_diff(tilde_transform_quadrature(t42, 1.0).value, 1 / (400 * M_PI)) <= 1e-6);
    CHECK(rel_diff(tilde_transform_quadrature(t42, 0.1).value, tilde_transform_closed(t42, 0.1)) <= 1e-6);
    TestFunction t62(6, 2);
    CHECK(rel_diff(tilde_transform_quadrature(t62, 2.0).value, tilde_transform_closed(t62, 2.0)) <= 1e-6);
}

TEST_CASE("dot transform decays like k^{-2B-2}") {
    TestFunction tf(12, 2);
    // beyond A - B the closed form changes sign pattern; look at large even k
    double r = dot_transform_closed(tf, 400).value / dot_transform_closed(tf, 200).value;
    CHECK(std::fabs(r) == doctest::Approx(std::pow(2.0, -6)).epsilon(0.05));
}

TEST_CASE("tilde transform below the Ramanujan line") {
    TestFunction tf(8, 2);
    const Rational th(7, 64);
    CHECK(tilde_transform_closed(tf, -th * th).coeff > 0);
    CHECK_THROWS_AS(tilde_transform_closed(tf, Rational(-1, 4)), DomainError);
}
