#pragma once

#include <array>
#include <optional>
#include <vector>

#include "supnorm/arithmetic.hpp"
#include "supnorm/oscillatory.hpp"

namespace supnorm {

constexpr double kDefaultBoxLimit = 1e9;

// box C <= c < 2C, |s| <= S, |r1| <= R, |r2| <= R_tilde, all closed except c < 2C
// C >= 1; S, R, R_tilde may be 0 for enumeration but must be >= 1 for the bound
struct CountingInstance {
    double C = 1, S = 1, R = 1, R_tilde = 1;
    i64 d1 = 1, d2 = 1;
    i64 u = 1;
    SquarefreeModulus N{1};
    std::optional<RationalApproximation> approx;  // of u/N

    void validate() const;
};

using Quad = std::array<i64, 4>;  // (c, s, r1, r2)

// N | u^2 d1 d2 c + u (d1 r2 + d2 r1) + s, lexicographic order
std::vector<Quad> enumerate_A(const CountingInstance& inst, double box_limit = kDefaultBoxLimit);
// independent oracle: brute force in the order s, r2, r1, c, then sorted
std::vector<Quad> enumerate_A_bruteforce(const CountingInstance& inst, double box_limit = kDefaultBoxLimit);
// subset with s c - r1 r2 a perfect square (0 included); needs d1 = d2 = 1
std::vector<Quad> enumerate_A_square(const CountingInstance& inst, double box_limit = kDefaultBoxLimit);
bool divisibility_holds(const CountingInstance& inst, const Quad& x);

enum class CountKind { Plain, Square };

struct BoundCheck {
    std::size_t count = 0;
    double bound_value = 0;  // epsilon powers set to 1
    double ratio = 0;
};

double lemma10_plain_rhs(const CountingInstance& inst);
double lemma10_square_rhs(const CountingInstance& inst);
BoundCheck lemma10_bound_check(const CountingInstance& inst, CountKind kind, double box_limit = kDefaultBoxLimit);

// congruence reduction: a mod Nc with ell1 abar = d1 u c + r1, -ell2 a = d2 u c + r2
struct CongruenceInstance {
    i64 l1 = 1, l2 = 1, d1 = 1, d2 = 1, c = 1, u = 1;
    SquarefreeModulus N{1};
    double R1 = 1, R2 = 1;
};

struct AdmissibleReport {
    std::size_t num_a = 0;           // admissible a with |r1| <= R1, |r2| <= R2
    std::size_t num_rs_pairs = 0;    // distinct (r1, r2) among them
    std::size_t max_multiplicity = 0;
    i64 gcd_bound = 1;               // gcd(c, l1, l2)
    std::size_t cong_violations = 0;
    std::size_t vps_violations = 0;
    std::size_t units_checked = 0;
};

AdmissibleReport count_admissible_a(const CongruenceInstance& inst, double box_limit = kDefaultBoxLimit);

// matrices (a b; c d), ad - bc = n, c >= 0, N | c; c = 0 only with a > 0
struct MatrixInstance {
    double x = 0, y = 1;
    i64 n = 1;
    SquarefreeModulus N{1};
    double delta = 0;
};

struct Matrix2 {
    i64 a, b, c, d;
    auto operator<=>(const Matrix2&) const = default;
};

// u(z, w) = |z - w|^2 / (4 Im z Im w) for w = g z
double point_pair_u(double x, double y, const Matrix2& g);

constexpr double kDeltaCap = 64.0;
std::vector<Matrix2> enumerate_R_N_matrices(const MatrixInstance& inst, double box_limit = kDefaultBoxLimit);
// every entry bounded by E in absolute value
std::vector<Matrix2> enumerate_matrices_naive(const MatrixInstance& inst, i64 E);
// largest entry any solution can have; the naive box is complete when this is <= E
double matrix_entry_bound(const MatrixInstance& inst);

struct MatrixSplit {
    std::size_t M = 0, M0 = 0, Mstar = 0;
};
MatrixSplit matrix_count_split(const MatrixInstance& inst);

// majorant of the point-pair kernel: T for u <= n^-4, else 4 T^{1/2} u^{-1/4} (u+1)^{-5/4}
double kernel_majorant(double u, double T, i64 n);
// sum of the majorant over matrices with u < delta_max
double geometric_sum(const MatrixInstance& inst, double T, double delta_max);
double geometric_shape(double T, i64 n, double y);  // T + T^{1/2} n + T^{1/2} n^{1/2} y
double m0_shape(i64 n, double delta, double y);     // n^{0.1} (1 + sqrt(n delta) y)

}  // namespace supnorm
