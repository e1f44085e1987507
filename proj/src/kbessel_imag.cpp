// K-Bessel of purely imaginary order, with working precision raised until
// the cancellation estimate is small enough.
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "supnorm/arithmetic.hpp"
#include "supnorm/special_functions.hpp"

namespace supnorm {

namespace {

using mp50 = boost::multiprecision::cpp_bin_float_50;
using mp100 = boost::multiprecision::cpp_bin_float_100;

template <class Real>
Real eps_of() {
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
int digits_of() {
    return std::numeric_limits<Real>::digits10;
}

// Im log Gamma(1 + i t): shift by M, then Stirling
template <class Real>
Real arg_gamma_impl(const Real& t) {
    using std::abs;
    using std::atan2;
    using std::log;
    using std::sqrt;
    using std::sin;
    const int M = digits_of<Real>() <= 16 ? 20 : digits_of<Real>() <= 50 ? 60 : 100;
    Real acc = 0;
    for (int j = 0; j < M; ++j) acc -= atan2(t, Real(1 + j));
    const Real a = Real(M) + Real(1);  // Re w
    const Real modw = sqrt(a * a + t * t);
    const Real th = atan2(t, a);
    // Im[(w - 1/2) log w - w]
    Real s = (a - Real(0.5)) * th + t * log(modw) - t;
    Real pw = modw;  // |w|^{2n-1}
    for (int n = 1; n <= 60; ++n) {
        Real b = boost::math::bernoulli_b2n<Real>(n);
        Real term = b / (Real(2 * n) * Real(2 * n - 1) * pw) * (-sin(Real(2 * n - 1) * th));
        s += term;
        if (abs(b / (Real(2 * n) * Real(2 * n - 1) * pw)) < eps_of<Real>() * Real(1e-3)) break;
        pw *= modw * modw;
    }
    return acc + s;
}

template <class Real>
struct Attempt {
    Real value;
    Real rel_err;
};

// cosh(pi t/2) int_0^U e^{-y cosh u} cos(t u) du
template <class Real>
Attempt<Real> k_integral(const Real& t, const Real& y) {
    using std::acosh;
    using std::log;
    using std::cosh;
    using std::cos;
    using std::exp;
    using std::sinh;
    using std::abs;
    const Real pi = boost::math::constants::pi<Real>();
    const Real D = Real(digits_of<Real>()) * log(Real(10)) + Real(10);
    const Real U = acosh(Real(1) + D / y);
    Real sum = 0, abssum = 0;
    Real u = 0;
    while (u < U) {
        Real h = Real(6) / (t + y * sinh(u) + Real(1));
        if (h > Real(1)) h = Real(1);
        Real b = u + h;
        if (b > U) b = U;
        auto f = [&](const Real& x) { return exp(-y * cosh(x)) * cos(t * x); };
        auto g = [&](const Real& x) { return exp(-y * cosh(x)); };
        sum += boost::math::quadrature::gauss<Real, 20>::integrate(f, u, b);
        abssum += boost::math::quadrature::gauss<Real, 20>::integrate(g, u, b);
        u = b;
    }
    Real scale = cosh(pi * t / 2);
    Attempt<Real> r{sum * scale, Real(0)};
    r.rel_err = abs(sum) > 0 ? Real(20) * eps_of<Real>() * abssum / abs(sum) : Real(1);
    return r;
}

// ascending series of I_{+-it}, valid for t > 0
template <class Real>
Attempt<Real> k_series(const Real& t, const Real& y) {
    using std::abs;
    using std::cos;
    using std::log;
    using std::sin;
    using std::sqrt;
    using std::tanh;
    const Real pi = boost::math::constants::pi<Real>();
    const Real z = y * y / 4;
    Real fre = 1, fim = 0, tre = 1, tim = 0, maxabs = 1;
    for (int k = 1; k < 100000; ++k) {
        // term *= z / (k (k + i t))
        Real d = Real(k) * Real(k) + t * t;
        Real nre = (tre * Real(k) + tim * t) / d;
        Real nim = (tim * Real(k) - tre * t) / d;
        Real f = z / Real(k);
        tre = nre * f;
        tim = nim * f;
        fre += tre;
        fim += tim;
        Real ta = sqrt(tre * tre + tim * tim);
        if (ta > maxabs) maxabs = ta;
        if (Real(k) * Real(k) > z && ta < eps_of<Real>() * eps_of<Real>() * maxabs) break;
    }
    Real phi = t * log(y / 2) - arg_gamma_impl(t);
    Real im = sin(phi) * fre + cos(phi) * fim;
    Real pref = sqrt(pi / (tanh(pi * t / 2) * Real(2) * t));
    Attempt<Real> r{-pref * im, Real(0)};
    Real fabs_ = sqrt(fre * fre + fim * fim);
    r.rel_err = abs(im) > 0 ? eps_of<Real>() * Real(10) * (maxabs + (abs(phi) + Real(1)) * fabs_) / abs(im) : Real(1);
    return r;
}

// rough log of the cancellation factor, used only to skip hopeless attempts
double integral_loss_log(double t, double y) {
    if (y >= t) return std::sqrt(y * y - t * t) + t * std::asin(t / y) - y;
    return M_PI * t / 2 - std::min(y, M_PI * t / 2);
}
double series_loss_log(double t, double y) { return y * y / (4 * std::max(t, 1.0)); }

template <class Real>
bool try_at(double t, double y, double tol, KImagResult& out) {
    const double budget = std::log(tol / static_cast<double>(eps_of<Real>()));
    bool done = false;
    auto take = [&](const Attempt<Real>& a, const char* name) {
        double e = static_cast<double>(a.rel_err);
        if (!done || e < out.est_rel_error) {
            out.value = static_cast<double>(a.value);
            out.est_rel_error = e;
            out.digits = digits_of<Real>();
            out.method = name;
        }
        done = true;
    };
    const bool series_ok = t >= 1.0 && series_loss_log(t, y) < budget;
    const bool integral_ok = integral_loss_log(t, y) < budget;
    if (series_ok && (!integral_ok || series_loss_log(t, y) < integral_loss_log(t, y))) {
        take(k_series<Real>(Real(t), Real(y)), "series");
        if (out.est_rel_error <= tol) return true;
    }
    if (integral_ok) {
        take(k_integral<Real>(Real(t), Real(y)), "integral");
        if (out.est_rel_error <= tol) return true;
    }
    if (series_ok && out.method != "series") {
        take(k_series<Real>(Real(t), Real(y)), "series");
    }
    return done && out.est_rel_error <= tol;
}

}  // namespace

double arg_gamma_1_plus_it(double t) { return arg_gamma_impl<double>(t); }

KImagResult bessel_k_imag_detail(double t, double y) {
    if (!(y > 0)) throw DomainError("bessel_k_imag: y must be positive");
    t = std::fabs(t);
    const double tol = 1e-11;
    if (y > t) {
        // log size of the value; below the double range there is nothing to compute
        double lg = -std::sqrt(y * y - t * t) - t * std::asin(t / y) + M_PI * t / 2;
        if (lg < -700.0) return KImagResult{0.0, 0.0, 16, "underflow"};
    }
    KImagResult best;
    best.est_rel_error = std::numeric_limits<double>::infinity();
    auto consider = [&](bool ok, const KImagResult& r) {
        if (!r.method.empty() && r.est_rel_error < best.est_rel_error) best = r;
        return ok;
    };
    KImagResult r1, r2, r3;
    if (consider(try_at<double>(t, y, tol, r1), r1)) return best;
    if (consider(try_at<mp50>(t, y, tol, r2), r2)) return best;
    if (consider(try_at<mp100>(t, y, tol, r3), r3)) return best;
    if (best.method.empty()) {
        auto a = k_integral<mp100>(mp100(t), mp100(y));
        best.value = static_cast<double>(a.value);
        best.est_rel_error = static_cast<double>(a.rel_err);
        best.digits = digits_of<mp100>();
        best.method = "integral";
    }
    return best;
}

double bessel_k_imag(double t, double y) { return bessel_k_imag_detail(t, y).value; }

}  // namespace supnorm
