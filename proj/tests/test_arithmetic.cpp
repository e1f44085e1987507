#include <doctest.h>

#include "supnorm/arithmetic.hpp"

using namespace supnorm;

TEST_CASE("character values") {
    auto triv = DirichletCharacter::trivial(SquarefreeModulus(15));
    CHECK(std::abs(triv(4) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(triv(15)) == 0.0);
    CHECK(std::abs(triv(6)) == 0.0);
    auto real3 = DirichletCharacter::real(SquarefreeModulus(3));
    CHECK(std::abs(real3(2) - std::complex<double>(-1, 0)) < 1e-15);
    CHECK(real3.angle(2) == Rational(1, 2));
    CHECK_FALSE(real3.angle(3).has_value());
}

TEST_CASE("character parsing round-trips") {
    for (const char* s : {"trivial", "trivial:15", "real:21", "35:1,3"}) {
        auto chi = DirichletCharacter::parse(s);
        auto again = DirichletCharacter::parse(chi.spec());
        for (i64 a = 1; a < 40; ++a) CHECK(chi.angle(a) == again.angle(a));
    }
    CHECK_THROWS_AS(DirichletCharacter::parse("12:1"), DomainError);
    CHECK_THROWS_AS(DirichletCharacter::parse("nonsense"), DomainError);
}

TEST_CASE("character group structure") {
    SquarefreeModulus N(35);
    auto all = DirichletCharacter::all(N, false);
    CHECK(all.size() == 24);
    auto even = DirichletCharacter::all(N, true);
    CHECK(even.size() == 12);
    for (const auto& chi : even) CHECK(chi.is_even());
    const auto& chi = all[7];
    auto prod = chi * chi.conj();
    CHECK(prod.is_trivial());
    // restriction keeps the component at 5 only
    auto r = chi.restrict_to(10);
    CHECK(r.modulus().value() == 5);
}

TEST_CASE("modular inverse") {
    CHECK(mod_inverse(1, 7) == 1);
    CHECK(mod_inverse(2, 5) == 3);
    CHECK(mod_inverse(4, 9) == 7);
    CHECK_THROWS(mod_inverse(6, 9));
}

TEST_CASE("p-adic valuation") {
    CHECK(p_adic_valuation(8, 2) == 3);
    CHECK(p_adic_valuation(15, 2) == 0);
    CHECK(p_adic_valuation(360, 3) == 2);
}

TEST_CASE("primes in an interval") {
    CHECK(primes_in_interval(10, 20, SquarefreeModulus(21)) == std::vector<i64>{11, 13, 17, 19});
    CHECK(primes_in_interval(10, 20, SquarefreeModulus(143)) == std::vector<i64>{17, 19});
    CHECK(primes_in_interval(14, 16, SquarefreeModulus(1)).empty());
}

TEST_CASE("square-free modulus") {
    CHECK_THROWS_AS(SquarefreeModulus(12), DomainError);
    SquarefreeModulus N(30);
    CHECK(N.primes() == std::vector<i64>{2, 3, 5});
    CHECK(N.coprime_to(7));
    CHECK_FALSE(N.coprime_to(9));
}

TEST_CASE("small helpers") {
    CHECK(mod_floor(-3, 5) == 2);
    CHECK(isqrt(99) == 9);
    CHECK(is_square(0));
    CHECK(is_square(144));
    CHECK_FALSE(is_square(145));
    CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
    CHECK(divisors(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
}
