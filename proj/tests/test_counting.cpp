#include <doctest.h>

#include "supnorm/counting.hpp"

using namespace supnorm;

namespace {
CountingInstance box(double C, double S, double R, double Rt, i64 u, i64 N) {
    CountingInstance in;
    in.C = C;
    in.S = S;
    in.R = R;
    in.R_tilde = Rt;
    in.u = u;
    in.N = SquarefreeModulus(N);
    in.approx = dirichlet_approximate(Rational(u, N), double(N));
    return in;
}
}  // namespace

TEST_CASE("congruence box examples") {
    CHECK(enumerate_A(box(1, 0, 0, 0, 1, 5)).empty());
    CHECK(enumerate_A(box(1, 0, 0, 0, 5, 5)) == std::vector<Quad>{{1, 0, 0, 0}});
    auto in = box(10, 5, 3, 3, 1, 7);
    auto a = enumerate_A(in);
    CHECK_FALSE(a.empty());
    CHECK(a == enumerate_A_bruteforce(in));
    for (const auto& x : a) CHECK(divisibility_holds(in, x));
}

TEST_CASE("square subset is a filter") {
    auto in = box(8, 8, 4, 4, 3, 11);
    auto all = enumerate_A(in);
    std::vector<Quad> want;
    for (const auto& x : all)
        if (x[1] * x[0] - x[2] * x[3] >= 0 && is_square(x[1] * x[0] - x[2] * x[3])) want.push_back(x);
    CHECK(enumerate_A_square(in) == want);
}

TEST_CASE("counting bound on an empty box") {
    // c = 1 and 100 = 3 mod 97: 3 + 10(r1 + r2) + s never vanishes mod 97
    auto r = lemma10_bound_check(box(1, 1, 1, 1, 10, 97), CountKind::Plain);
    CHECK(r.count == 0);
    CHECK(r.ratio == 0);
    CHECK_THROWS_AS(lemma10_bound_check(box(1, 0, 0, 0, 1, 5), CountKind::Plain), DomainError);
}

TEST_CASE("enumeration cap is an error, not a truncation") {
    auto in = box(1e4, 1e4, 1e4, 1e4, 1, 7);
    CHECK_THROWS_AS(enumerate_A(in, 1e6), ResourceError);
}

TEST_CASE("congruence reduction") {
    CongruenceInstance ci;
    ci.l1 = 2;
    ci.l2 = 3;
    ci.c = 4;
    ci.u = 2;
    ci.N = SquarefreeModulus(7);
    ci.R1 = ci.R2 = 28;
    auto r = count_admissible_a(ci);
    CHECK(r.num_a > 0);
    CHECK(r.cong_violations == 0);
    CHECK(r.vps_violations == 0);
    CHECK(r.max_multiplicity <= static_cast<std::size_t>(r.gcd_bound));
}

TEST_CASE("matrices near i") {
    MatrixInstance mi;
    mi.x = 0;
    mi.y = 1;
    mi.n = 1;
    mi.N = SquarefreeModulus(3);
    mi.delta = 0.01;
    CHECK(enumerate_R_N_matrices(mi) == std::vector<Matrix2>{{1, 0, 0, 1}});
    auto s = matrix_count_split(mi);
    CHECK(s.M == 1);
    CHECK(s.M0 == 1);
    CHECK(s.Mstar == 0);

    mi.N = SquarefreeModulus(2);
    mi.delta = 0.05;
    for (const auto& g : enumerate_R_N_matrices(mi)) CHECK(g.c == 0);
}

TEST_CASE("fast enumeration equals the naive box") {
    MatrixInstance mi;
    mi.x = 0.3;
    mi.y = 0.8;
    mi.n = 6;
    mi.N = SquarefreeModulus(5);
    mi.delta = 0.7;
    REQUIRE(matrix_entry_bound(mi) <= 60);
    CHECK(enumerate_R_N_matrices(mi) == enumerate_matrices_naive(mi, 60));
}

TEST_CASE("point-pair invariant") {
    CHECK(point_pair_u(0, 1, {1, 0, 0, 1}) == 0.0);
    // g z = 2i from z = i with g = diag(2, 1): |i - 2i|^2 / (4 * 1 * 2)
    CHECK(point_pair_u(0, 1, {2, 0, 0, 1}) == doctest::Approx(1.0 / 8));
    CHECK(kernel_majorant(0, 16, 2) == 16);
}
