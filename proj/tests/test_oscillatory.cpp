#include <doctest.h>

#include <cmath>
#include <numbers>

#include "supnorm/oscillatory.hpp"

using namespace supnorm;

TEST_CASE("Dirichlet approximation") {
    auto a = dirichlet_approximate(Rational(1, 3), 10);
    CHECK(a.a == 1);
    CHECK(a.q == 3);
    CHECK(a.beta == 0);
    CHECK(a.valid());

    auto b = dirichlet_approximate(std::numbers::pi - 3, 100);
    CHECK(b.a == 1);
    CHECK(b.q == 7);
    CHECK(std::fabs(static_cast<double>(b.beta)) == doctest::Approx(1.2644892673e-3).epsilon(1e-6));
    CHECK(b.valid());

    auto c = dirichlet_approximate(0.5 + 1e-9, 10);
    CHECK(c.a == 1);
    CHECK(c.q == 2);
    CHECK(c.valid());
}

TEST_CASE("frequencies") {
    CHECK(Frequency::parse("3/10").exact == Rational(3, 10));
    CHECK(Frequency::parse("0.3").exact == Rational(3, 10));
    CHECK_FALSE(Frequency::parse("golden").exact.has_value());
    CHECK(Frequency::golden().dist_to_int() == doctest::Approx(0.3819660112501051));
    CHECK_THROWS(Frequency::parse("x"));
}

TEST_CASE("dyadic partition of unity") {
    CHECK(partition_sum(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(partition_sum(3.7) - 1) < 1e-12);
    CHECK(std::fabs(partition_sum(std::ldexp(1.0, 20)) - 1) < 1e-12);
}

TEST_CASE("window") {
    SmoothWindow w(256, 16);
    CHECK(w(100) == 0.0);
    CHECK(w(600) == 0.0);
    CHECK(w(256) == 1.0);
    CHECK(w.left_width() < w.right_width());
    CHECK_THROWS_AS(SmoothWindow(256, 0.5), DomainError);
    CHECK_THROWS_AS(SmoothWindow(256, 300), DomainError);
}

TEST_CASE("Poisson decay") {
    SmoothWindow w(1024, 32);
    auto r = lemma4_decay_check(w, Frequency::rational(Rational(3, 10)), 2);
    CHECK(r.bound == doctest::Approx(1024 / (9.6 * 9.6)));
    CHECK(r.ratio <= 100);
    // integer frequency: no decay, the sum is the window mass
    CHECK_THROWS(lemma4_decay_check(w, Frequency::rational(Rational(1)), 2));
}

TEST_CASE("kernel integral against its bound") {
    auto I = voronoi_integral(SmoothWindow(8, 8), ArchimedeanParameter::holomorphic(2), 1, 1.0);
    CHECK(I.converged);
    CHECK(std::isfinite(I.value));
    CHECK(std::fabs(I.value) <= 20 * lemma6_bound1(8, ArchimedeanParameter::holomorphic(2).t_star(), 1.0));
    // holomorphic minus kernel vanishes, so does its integral
    CHECK(voronoi_integral(SmoothWindow(8, 8), ArchimedeanParameter::holomorphic(2), -1, 1.0).value == 0.0);
}

TEST_CASE("major-arc bound") {
    CHECK(lemma8_bound(1, 0, 400, 1, 1) == doctest::Approx(1 / 20.0));
    CHECK(lemma8_bound(3, 0, 400, 1, 1) == doctest::Approx(3 / 20.0));
}

TEST_CASE("slope fit") {
    std::vector<double> T{2, 4, 8, 16}, s;
    for (double t : T) s.push_back(std::pow(t, -3.0));
    auto f = lemma4_slope(T, s, 1e-30);
    CHECK(f.slope == doctest::Approx(-3.0));
    CHECK(f.points == 4);
}
