#pragma once

#include "supnorm/arithmetic.hpp"

namespace supnorm {

// phi(x) = i^{B-A} J_A(x) x^{-B}, 2 <= B < A of equal parity
class TestFunction {
public:
    TestFunction(int A, int B);
    int A() const { return A_; }
    int B() const { return B_; }
    // i^{B-A}, which is +-1
    int sign() const { return ((A_ - B_) / 2) % 2 == 0 ? 1 : -1; }
    double operator()(double x) const;

private:
    int A_, B_;
};

// value = coeff / pi
struct ClosedValue {
    Rational coeff;
    double value = 0;
};

// reverse_order multiplies the factors j = B..0 instead of 0..B
ClosedValue dot_transform_closed(const TestFunction& tf, int k, bool reverse_order = false);
// t^2 may be negative: t = i tau gives -tau^2; must stay >= -(7/64)^2
ClosedValue tilde_transform_closed(const TestFunction& tf, const Rational& t_squared, bool reverse_order = false);
double tilde_transform_closed(const TestFunction& tf, double t);

struct QuadResult {
    double value = 0;
    double tail_bound = 0;  // bound on the discarded tail
    double cutoff = 0;
    bool converged = true;
};

// i^k int_0^inf J_{k-1}(y) phi(y) dy / y
QuadResult dot_transform_quadrature(const TestFunction& tf, int k);
// int_0^inf G_t(y) phi(y) dy / y, G_t the imaginary-order kernel
QuadResult tilde_transform_quadrature(const TestFunction& tf, double t);

double rel_diff(double a, double b);

}  // namespace supnorm
