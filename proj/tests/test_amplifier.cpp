#include <doctest.h>

#include <set>

#include "supnorm/amplifier.hpp"

using namespace supnorm;

TEST_CASE("Hecke recursion") {
    auto chi = DirichletCharacter::trivial(SquarefreeModulus(7));
    HeckeSystem sys(chi, {{2, 0.7}, {3, -1.1}, {5, 0.3}});
    CHECK(sys(1) == cplx(1, 0));
    CHECK(std::abs(sys(4) - cplx(0.7 * 0.7 - 1, 0)) < 1e-15);
    CHECK(std::abs(sys(6) - cplx(0.7 * -1.1, 0)) < 1e-15);
    CHECK_THROWS_AS(sys(11), DomainError);
    CHECK_THROWS_AS(HeckeSystem(chi, {{4, 1.0}}), DomainError);
}

TEST_CASE("amplifier support and diagonal") {
    auto chi = DirichletCharacter::trivial(SquarefreeModulus(21));
    HeckeSystem sys(chi, {{11, 1.2}, {13, -0.4}, {17, 0.9}, {19, 2.0}});
    auto a = build_amplifier(sys, 10, SquarefreeModulus(21));
    std::set<i64> support;
    for (const auto& t : a.terms) support.insert(t.ell);
    CHECK(support == std::set<i64>{11, 13, 17, 19, 121, 169, 289, 361});
    CHECK(std::abs(amplifier_diagonal_value(sys, a) - cplx(4, 0)) < 1e-12);

    std::map<i64, Rational> exact{{11, Rational(6, 5)}, {13, Rational(-2, 5)}, {17, Rational(9, 10)}, {19, 2}};
    auto v = amplifier_diagonal_exact(chi, exact, a);
    // coefficient vector over e(j/m); only the constant term survives
    REQUIRE_FALSE(v.empty());
    CHECK(v[0] == 4);
    for (std::size_t j = 1; j < v.size(); ++j) CHECK(v[j] == 0);
}

TEST_CASE("empty amplifier") {
    auto chi = DirichletCharacter::trivial(SquarefreeModulus(11 * 13 * 17 * 19));
    HeckeSystem sys(chi, {});
    auto a = build_amplifier(sys, 10, chi.modulus());
    CHECK(a.terms.empty());
    CHECK(amplifier_diagonal_value(sys, a) == cplx(0, 0));
}

TEST_CASE("variant for small L") {
    auto chi = DirichletCharacter::trivial(SquarefreeModulus(1));
    auto sys = HeckeSystem::random(chi, 10, 1);
    auto a = build_is_amplifier(sys, 4, SquarefreeModulus(1));
    for (const auto& t : a.terms) CHECK((t.ell == 2 || t.ell == 4));
    CHECK_THROWS_AS(build_is_amplifier(sys, 3, SquarefreeModulus(1)), DomainError);
}

TEST_CASE("literal square coefficient breaks the identity for nontrivial chi") {
    auto chi = DirichletCharacter::parse("7:1");
    auto sys = HeckeSystem::random(chi, 100, 5);
    auto good = build_amplifier(sys, 20, chi.modulus());
    auto lit = build_amplifier(sys, 20, chi.modulus(), SquareCoefficient::ConjChiPSquared);
    CHECK(std::abs(amplifier_diagonal_value(sys, good) - double(good.lambda1.size())) < 1e-9);
    CHECK(std::abs(amplifier_diagonal_value(sys, lit) - double(lit.lambda1.size())) > 1e-3);
}

TEST_CASE("mismatched system is rejected") {
    auto sys1 = HeckeSystem::random(DirichletCharacter::trivial(SquarefreeModulus(7)), 100, 1);
    auto sys2 = HeckeSystem::random(DirichletCharacter::parse("7:1"), 100, 1);
    auto a = build_amplifier(sys1, 20, SquarefreeModulus(7));
    CHECK_THROWS_AS(amplifier_diagonal_value(sys2, a), DomainError);
}
