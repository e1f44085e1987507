#include <doctest.h>

#include <cmath>

#include "supnorm/kloosterman.hpp"

using namespace supnorm;

namespace {
DirichletCharacter triv() { return DirichletCharacter::trivial(SquarefreeModulus(1)); }
}  // namespace

TEST_CASE("reference sums") {
    CHECK(std::abs(kloosterman_sum({1, 1, 1, triv()}) - std::complex<double>(1, 0)) < 1e-14);
    CHECK(std::abs(kloosterman_sum({1, 1, 3, triv()}) - std::complex<double>(-1, 0)) < 1e-14);
    CHECK(std::abs(kloosterman_sum({1, 2, 5, triv()}) - std::complex<double>(-1 - std::sqrt(5.0), 0)) < 1e-14);
    auto real3 = DirichletCharacter::real(SquarefreeModulus(3));
    CHECK(std::abs(kloosterman_sum({1, 1, 3, real3}) - std::complex<double>(0, -std::sqrt(3.0))) < 1e-14);
}

TEST_CASE("modulus must divide c") {
    auto real3 = DirichletCharacter::real(SquarefreeModulus(3));
    CHECK_THROWS_AS(kloosterman_sum({1, 1, 4, real3}), DomainError);
}

TEST_CASE("Weil ratios") {
    CHECK(kloosterman_weil_check({1, 1, 3, triv()}).ratio == doctest::Approx(1 / (2 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(kloosterman_weil_check({1, 2, 5, triv()}).ratio == doctest::Approx(0.7236067977).epsilon(1e-9));
    CHECK(kloosterman_weil_check({1, 1, 1, triv()}).ratio == doctest::Approx(1.0));
}

TEST_CASE("angles agree with the float sum") {
    auto chi = DirichletCharacter::parse("15:1,2");
    KloostermanQuery q{4, 7, 30, chi};
    std::complex<double> s = 0;
    for (const auto& [a, k] : kloosterman_angles(q)) s += double(k) * e_turns(a);
    CHECK(std::abs(s - kloosterman_sum(q)) < 1e-12);
}

TEST_CASE("odd character: conjugation carries chi(-1)") {
    auto chi = DirichletCharacter::real(SquarefreeModulus(3));  // odd
    CHECK_FALSE(chi.is_even());
    for (i64 m = 1; m <= 6; ++m)
        for (i64 n = 1; n <= 6; ++n) {
            auto a = std::conj(kloosterman_sum({n, m, 9, chi}));
            auto b = -kloosterman_sum({m, n, 9, chi});
            CHECK(std::abs(a - b) < 1e-12);
        }
}
