#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supnorm/arithmetic.hpp"
#include "supnorm/special_functions.hpp"
#include "supnorm/window.hpp"

namespace supnorm {

struct RationalApproximation {
    Rational x;
    i64 a = 0;
    i64 q = 1;
    double H = 1;
    Rational beta;  // x - a/q

    // gcd(a,q) = 1, q <= H, |beta| <= 1/(qH), checked exactly
    bool valid() const;
};

// best convergent with denominator <= H
RationalApproximation dirichlet_approximate(const Rational& x, double H);
// a double is a dyadic rational, so this is exact too
RationalApproximation dirichlet_approximate(double x, double H);
Rational exact_rational(double x);

// frequency for the Poisson-decay sums; the golden ratio is carried to 50 digits
struct Frequency {
    std::optional<Rational> exact;  // empty means golden
    std::string name;

    static Frequency rational(const Rational& r);
    static Frequency golden();  // (sqrt 5 - 1)/2
    static Frequency parse(const std::string& s);
    double approx() const;
    double dist_to_int() const;  // ||alpha||
};

struct DecayReport {
    double sum_abs = 0;
    double bound = 0;  // Z (T ||alpha||)^{-j}
    double ratio = 0;
};

// |sum_m e(alpha m) Phi(m)|, computed to ~45 significant digits
double lemma4_sum_abs(const SmoothWindow& w, const Frequency& alpha);
DecayReport lemma4_decay_check(const SmoothWindow& w, const Frequency& alpha, int j);

struct SlopeFit {
    double slope = 0;
    std::size_t points = 0;
};
// least-squares slope of log(upper envelope of |sum|) against log T
SlopeFit lemma4_slope(const std::vector<double>& Ts, const std::vector<double>& sums, double floor_value);

// sum over nu >= 0 of G(x / 2^nu), G = psi / sum_k psi(./2^k)
double dyadic_partition_piece(double x);
double partition_sum(double x);

struct PartitionReport {
    double max_error = 0;
    double worst_x = 0;
};
PartitionReport partition_check(const std::vector<double>& xs);

struct IntegralResult {
    double value = 0;
    double abs_error = 0;  // estimated from panel doubling
    bool converged = true;
};

// I = int g(xi) J^{+-}(alpha sqrt xi) d xi
IntegralResult voronoi_integral(const SmoothWindow& w, const ArchimedeanParameter& p, int sign, double alpha);

// the plain and the integrated-by-parts kernel integral bounds, epsilon factors dropped
double lemma6_bound1(double Z, double t_star, double alpha);
double lemma6_bound2(double Z, double T, double t_star, double alpha, int j);
bool lemma6_bound2_applies(double Z, double t_star, double alpha);

double lemma8_bound(i64 q, double beta, double Z, double t_star, double eps_factor);

}  // namespace supnorm
