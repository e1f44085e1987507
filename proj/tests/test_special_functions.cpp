#include <doctest.h>

#include <cmath>

#include "supnorm/arithmetic.hpp"
#include "supnorm/special_functions.hpp"

using namespace supnorm;

namespace {
// values frozen from mpmath at 30 digits
struct Ref {
    double t, y, v;
};
const Ref kImag[] = {
    {1, 1e-4, -0.2305210469830341},  {1, 1, 0.7262266016258667},      {1, 10, 4.253242183934523e-5},
    {1, 100, 1.162632267507843e-44}, {5, 1e-4, 0.04129307890725224},  {5, 1, 0.4900292958499022},
    {5, 10, 0.006798143996728705},   {5, 250, 2.591143713350764e-107}, {20, 1, -0.2575641346494636},
    {20, 10, -0.1089965680161335},   {20, 100, 1.392094821312829e-32}, {100, 1e-4, 0.0868416225550123},
    {100, 10, -0.05508708988282873}, {100, 100, 0.1513725509247209},  {100, 250, 2.845643240357081e-51},
};
const Ref kG[] = {
    {0.1, 1e-3, 3.191865099470129},    {0.1, 300, 0.03182966623249195}, {1, 3, -0.4206959886169449},
    {1, 1000, -0.004666330583611517},  {2, 0.5, 0.3974501151911333},    {5, 20, 0.146485281649961},
    {5, 121.5, -0.057570393244331792}, {5, 121.8, -0.067848210464277965}, {5, 122.0, -0.071334671312640045},
    {10, 80, -0.08528240017168391},    {10, 1000, 0.000302239629137993},
};
}  // namespace

TEST_CASE("J of real order") {
    CHECK(bessel_j(0, 1e-8) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(bessel_j(1, 1) == doctest::Approx(0.4400505857449335).epsilon(1e-13));
    CHECK(bessel_j(5, 2) == doctest::Approx(0.007039629755871685).epsilon(1e-12));
}

TEST_CASE("K of imaginary order against frozen values") {
    for (const auto& r : kImag) {
        INFO("t=" << r.t << " y=" << r.y);
        CHECK(bessel_k_imag(r.t, r.y) == doctest::Approx(r.v).epsilon(1e-10));
    }
    CHECK(bessel_k_imag(0, 1) == doctest::Approx(0.4210244382407083).epsilon(1e-12));
    CHECK(bessel_k_imag(0, 10) == doctest::Approx(1.778006231616765e-05).epsilon(1e-12));
}

TEST_CASE("imaginary-order J kernel against frozen values") {
    for (const auto& r : kG) {
        INFO("t=" << r.t << " y=" << r.y);
        CHECK(std::fabs(imag_order_kernel(r.t, r.y) - r.v) < 1e-11);
    }
    // panels straddling the stationary point used to lose five digits here
    for (double y = 120.5; y <= 121.9; y += 0.1)
        CHECK(std::fabs(imag_order_kernel(5, y)) < 1.0);
}

TEST_CASE("Y pair at t = 0 is 2 Y_0") {
    CHECK(bessel_y_imag_pair(0, 1) == doctest::Approx(0.1765139284).epsilon(1e-9));
    CHECK(bessel_y_imag_pair(0, 4) == doctest::Approx(2 * -0.016940739325064992).epsilon(1e-11));
    CHECK(bessel_y_imag_pair(0.7, 3) == bessel_y_imag_pair(-0.7, 3));
}

TEST_CASE("Voronoi kernel") {
    auto h2 = ArchimedeanParameter::holomorphic(2);
    for (double y : {0.01, 1.0, 50.0}) CHECK(voronoi_kernel(h2, -1, y) == 0.0);
    CHECK(voronoi_kernel(h2, 1, 1) == doctest::Approx(2 * M_PI * bessel_j(1, 4 * M_PI)).epsilon(1e-12));
    // J_1(4 pi) = -0.1545308155841940 (mpmath)
    CHECK(voronoi_kernel(h2, 1, 1) == doctest::Approx(-0.9709457499850830).epsilon(1e-12));
    auto m0 = ArchimedeanParameter::maass(0);
    CHECK(voronoi_kernel(m0, -1, 1) == doctest::Approx(4 * bessel_k(0, 4 * M_PI)).epsilon(1e-10));
}

TEST_CASE("derivative recurrences") {
    CHECK(check_derivative_recurrences(BesselFamily::J, 1, {2.0}).max_discrepancy < 1e-8);
    CHECK(check_derivative_recurrences(BesselFamily::K, 0, {1.0}).max_discrepancy < 1e-8);
    CHECK(check_derivative_recurrences(BesselFamily::J, 0, {0.5, 1.0, 3.0}).max_discrepancy < 1e-8);
}

TEST_CASE("one integration by parts on the canonical bump") {
    SmoothWindow g(2, 2, WindowShape::Bump);
    auto j = check_ibp_identity(g, 0, 1, BesselFamily::J);
    CHECK(j.converged);
    CHECK(j.rel_error <= 1e-6);
    auto k = check_ibp_identity(g, 0, 2, BesselFamily::K);
    CHECK(k.converged);
    CHECK(k.rel_error <= 1e-6);
    // with the opposite sign for K the mismatch is of order one
    CHECK(std::fabs(k.lhs - k.literal_rhs) > 0.5 * std::fabs(k.lhs));
    auto big = check_ibp_identity(g, 0, 50, BesselFamily::J);
    CHECK(big.converged);
    CHECK(big.rel_error <= 1e-6);
}

TEST_CASE("K transition bound") {
    auto fit = check_kbessel_transition_bound(10, {1.0, 10.0, 20.0});
    CHECK(fit.fitted_constant <= 10);
    CHECK_THROWS_AS(check_kbessel_transition_bound(1, {1.0}), DomainError);
}

TEST_CASE("parameter t*") {
    CHECK(ArchimedeanParameter::holomorphic(4).spectral() == 1.5);
    CHECK(ArchimedeanParameter::maass(5).t_star() >= 5);
}
