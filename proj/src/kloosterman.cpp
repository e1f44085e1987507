#include "supnorm/kloosterman.hpp"

#include <cmath>
#include <numeric>

namespace supnorm {

namespace {

void check(const KloostermanQuery& q) {
    if (q.c < 1 || q.m < 1 || q.n < 1) throw DomainError("kloosterman: m, n, c must be positive");
    if (q.c % q.chi.modulus().value() != 0) throw DomainError("kloosterman: character modulus must divide c");
}

// calls f(a, abar) for every unit a mod c; inverses by a single extended gcd each
template <class F>
void for_units(i64 c, F&& f) {
    if (c == 1) {
        f(i64{0}, i64{0});
        return;
    }
    for (i64 a = 1; a < c; ++a) {
        if (std::gcd(a, c) != 1) continue;
        f(a, mod_inverse(a, c));
    }
}

}  // namespace

std::complex<double> kloosterman_sum(const KloostermanQuery& q) {
    check(q);
    const i64 den = q.chi.angle_denominator();
    const __int128 big = static_cast<__int128>(q.c) * den;
    // fixed summation order a = 1, 2, ... keeps results reproducible
    double re = 0, im = 0;
    for_units(q.c, [&](i64 a, i64 abar) {
        i64 k = *q.chi.angle_numerator(q.c == 1 ? 1 : a);
        __int128 num = static_cast<__int128>(mul_mod(q.m, abar, q.c) + mul_mod(q.n, a, q.c)) * den -
                       static_cast<__int128>(k) * q.c;
        auto z = e_ratio(num, big);
        re += z.real();
        im += z.imag();
    });
    return {re, im};
}

std::map<Rational, i64> kloosterman_angles(const KloostermanQuery& q) {
    check(q);
    std::map<Rational, i64> out;
    for_units(q.c, [&](i64 a, i64 abar) {
        Rational ang = *q.chi.angle(q.c == 1 ? 1 : a);
        Rational x = Rational(mul_mod(q.m, abar, q.c) + mul_mod(q.n, a, q.c), q.c) - ang;
        ++out[frac(x)];
    });
    return out;
}

WeilReport kloosterman_weil_check(const KloostermanQuery& q) {
    WeilReport r;
    r.value = kloosterman_sum(q);
    r.abs = std::abs(r.value);
    i64 g = std::gcd(std::gcd(q.m, q.n), q.c);
    double tau = static_cast<double>(divisors(q.c).size());
    r.bound = tau * std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(q.c));
    r.ratio = r.abs / r.bound;
    return r;
}

}  // namespace supnorm
