#include "supnorm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "supnorm/special_functions.hpp"

namespace supnorm {

using std::numbers::pi;

TestFunction::TestFunction(int A, int B) : A_(A), B_(B) {
    if (!(2 <= B && B < A)) throw DomainError("TestFunction: need 2 <= B < A");
    if ((A - B) % 2 != 0) throw DomainError("TestFunction: A and B must have the same parity");
}

double TestFunction::operator()(double x) const {
    if (!(x > 0)) throw DomainError("phi: x must be positive");
    return sign() * bessel_j(A_, x) * std::pow(x, -B_);
}

namespace {

ClosedValue closed_product(const TestFunction& tf, const Rational& shift, bool reverse_order) {
    // B! / 2^{B+1} * prod_j (shift + ((A+B)/2 - j)^2)^{-1}
    const int B = tf.B();
    Rational c = 1;
    for (int j = 2; j <= B; ++j) c *= j;
    c /= Rational(BigInt(1) << (B + 1));
    const Rational mid(tf.A() + tf.B(), 2);
    for (int i = 0; i <= B; ++i) {
        int j = reverse_order ? B - i : i;
        Rational f = shift + (mid - j) * (mid - j);
        if (f == 0) throw DomainError("transform closed form: vanishing factor (pole)");
        c /= f;
    }
    return {c, static_cast<double>(c) / pi};
}

}  // namespace

ClosedValue dot_transform_closed(const TestFunction& tf, int k, bool reverse_order) {
    if (k < 2 || k % 2 != 0) throw DomainError("dot transform: k must be even and >= 2");
    // ((1-k) i / 2)^2 = -(k-1)^2 / 4
    return closed_product(tf, -Rational((k - 1) * (k - 1), 4), reverse_order);
}

ClosedValue tilde_transform_closed(const TestFunction& tf, const Rational& t_squared, bool reverse_order) {
    const Rational th = ramanujan_theta();
    if (t_squared < -th * th) throw DomainError("tilde transform: imaginary part of t exceeds 7/64");
    return closed_product(tf, t_squared, reverse_order);
}

double tilde_transform_closed(const TestFunction& tf, double t) {
    const int B = tf.B();
    double c = std::tgamma(B + 1.0) / std::ldexp(1.0, B + 1) / pi;
    const double mid = 0.5 * (tf.A() + B);
    for (int j = 0; j <= B; ++j) c /= t * t + (mid - j) * (mid - j);
    return c;
}

double rel_diff(double a, double b) {
    double s = std::max(std::fabs(a), std::fabs(b));
    return s == 0 ? 0.0 : std::fabs(a - b) / s;
}

namespace {

using GL = boost::math::quadrature::gauss<double, 16>;

// integrate f over [0, Y], growing Y until tail(Y) <= rtol |value|
template <class F, class Tail>
QuadResult integrate_to_infinity(F&& f, Tail&& tail, double rtol, double y_cap) {
    QuadResult r;
    double acc = 0;
    // near 0 the integrand is a power times an oscillating log phase
    const double head[] = {0.0, 0.05, 0.2, 0.5, pi / 2};
    for (int i = 0; i + 1 < 5; ++i) acc += GL::integrate(f, head[i], head[i + 1]);
    double y = pi / 2;
    const double h = pi / 2;
    while (true) {
        // advance in blocks so the tail test is cheap
        for (int i = 0; i < 64; ++i, y += h) acc += GL::integrate(f, y, y + h);
        double tb = tail(y);
        if (tb <= rtol * std::fabs(acc)) {
            r.tail_bound = tb;
            break;
        }
        if (y >= y_cap) {
            r.tail_bound = tb;
            r.converged = false;
            break;
        }
    }
    r.value = acc;
    r.cutoff = y;
    return r;
}

constexpr double kTailRtol = 1e-11;
constexpr double kYCap = 4e5;

}  // namespace

QuadResult dot_transform_quadrature(const TestFunction& tf, int k) {
    if (k < 2 || k % 2 != 0) throw DomainError("dot transform: k must be even and >= 2");
    const int A = tf.A(), B = tf.B();
    // i^{k + B - A}
    const int s = ((k + B - A) / 2) % 2 == 0 ? 1 : -1;
    auto f = [&](double y) {
        if (y <= 0) return 0.0;
        return bessel_j(k - 1, y) * bessel_j(A, y) * std::pow(y, -B - 1);
    };
    // the leading non-oscillating part of J_{k-1} J_A has factor cos((A-k+1) pi / 2)
    const double lead = (A - k + 1) % 2 == 0 ? 1.0 : 0.0;
    auto tail = [&](double Y) {
        return lead * std::pow(Y, -B - 1) / (pi * (B + 1)) +
               (double(A) * A + double(k) * k) / (2 * pi * (B + 2)) * std::pow(Y, -B - 2);
    };
    QuadResult r = integrate_to_infinity(f, tail, kTailRtol, kYCap);
    r.value *= s;
    return r;
}

QuadResult tilde_transform_quadrature(const TestFunction& tf, double t) {
    const int A = tf.A(), B = tf.B();
    auto f = [&](double y) {
        if (y <= 0) return 0.0;
        return imag_order_kernel(t, y) * bessel_j(A, y) * std::pow(y, -B - 1);
    };
    const double lead = A % 2 == 0 ? 0.0 : 1.0;
    auto tail = [&](double Y) {
        return lead * std::pow(Y, -B - 1) / (pi * (B + 1)) +
               (4 * t * t + double(A) * A) / (2 * pi * (B + 2)) * std::pow(Y, -B - 2);
    };
    QuadResult r = integrate_to_infinity(f, tail, kTailRtol, kYCap);
    r.value *= tf.sign();
    return r;
}

}  // namespace supnorm
