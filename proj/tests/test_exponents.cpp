#include <doctest.h>

#include "supnorm/exponents.hpp"

using namespace supnorm;

namespace {
Monomial N(Rational e) { return Monomial::of(Symbol::N, e); }
Monomial T(Rational e) { return Monomial::of(Symbol::TStar, e); }
}  // namespace

TEST_CASE("monomial arithmetic") {
    CHECK((N(Rational(1, 2)) * N(Rational(-1, 2))).is_one());
    auto m = monomial_mul(T(5) * N(Rational(-1, 37)), T(Rational(1, 2)));
    CHECK(m.exponent(Symbol::TStar) == Rational(11, 2));
    CHECK(m.exponent(Symbol::N) == Rational(-1, 37));
    CHECK(m.pow(2).exponent(Symbol::TStar) == 11);
}

TEST_CASE("dominant monomial") {
    ExponentBound one;
    one.add(N(1));
    CHECK(dominant_monomial(one, parameter_constraints(), {}) == N(1));
    ExponentBound two;
    two.add(N(1));
    two.add(N(1));
    CHECK(dominant_monomial(two, parameter_constraints(), {}) == N(1));
}

TEST_CASE("balancing the critical terms") {
    auto b1 = assemble_bound1(ramanujan_theta());
    auto b2 = assemble_bound2();
    auto sub = solve_balance({b1.terms[0], b1.terms[2], b2.terms[1]}, {Symbol::H, Symbol::L},
                             {{Symbol::Z, N(1) * T(1)}});
    CHECK(sub.at(Symbol::H) == N(Rational(313, 457)) * T(Rational(-1803, 914)));
    CHECK(sub.at(Symbol::L) == N(Rational(64, 457)) * T(Rational(96, 457)));
    CHECK_THROWS(solve_balance({b1.terms[0], b1.terms[0]}, {Symbol::H, Symbol::L}, {{Symbol::Z, N(1)}}));
}

TEST_CASE("dominant term of the second bound") {
    auto b2 = assemble_bound2();
    std::map<Symbol, Monomial> sub{{Symbol::Z, N(1) * T(1)},
                                   {Symbol::H, N(Rational(313, 457)) * T(Rational(-1803, 914))},
                                   {Symbol::Q, N(Rational(1, 3))}};
    auto d = dominant_monomial(b2, parameter_constraints(), sub);
    auto b = b2.substitute(sub);
    for (const auto& m : b.terms)
        for (const auto& tau : parameter_constraints().corners())
            CHECK(ConstraintSet::log_size(m, tau) <= ConstraintSet::log_size(d.substitute(sub), tau));
}

TEST_CASE("final exponents") {
    auto r = theorem1_final();
    CHECK(r.exponent_N == Rational(-25, 914));
    CHECK(r.exponent_tstar == Rational(9979, 1828));
    CHECK(r.second_term_raw.exponent(Symbol::TStar) == Rational(11181, 1828));
    CHECK(r.second_term_absorbed.exponent(Symbol::N) == Rational(6158, 75405));
    CHECK(r.ranges_ok);
    CHECK(r.dominates_previous);
}

TEST_CASE("the square root of the assembly gives the first bound") {
    CHECK(bound1_from_assembly(ramanujan_theta()).same_terms(assemble_bound1(ramanujan_theta())));
}

TEST_CASE("hybrid combination") {
    auto r = theorem2_combination();
    CHECK(r.weight_x == Rational(37, 2269));
    CHECK(r.weight_y == Rational(2232, 2269));
    CHECK(r.exponent_tstar == Rational(-1, 2269));
    CHECK(r.exponent_N == Rational(-1, 2269));
}

TEST_CASE("rational strings") {
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(rational_str(Rational(4, 2)) == "2");
    CHECK_THROWS(parse_rational("1/0"));
}
