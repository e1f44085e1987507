#pragma once

#include <complex>
#include <map>

#include "supnorm/arithmetic.hpp"

namespace supnorm {

struct KloostermanQuery {
    i64 m;
    i64 n;
    i64 c;
    DirichletCharacter chi;
};

// S_chi(m,n;c) = sum over units a mod c of conj(chi(a)) e((m abar + n a)/c)
std::complex<double> kloosterman_sum(const KloostermanQuery& q);

// the same sum as a multiset of exact angles: angle -> multiplicity
std::map<Rational, i64> kloosterman_angles(const KloostermanQuery& q);

struct WeilReport {
    std::complex<double> value;
    double abs;
    double bound;  // tau(c) gcd(m,n,c)^{1/2} c^{1/2}
    double ratio;
};

WeilReport kloosterman_weil_check(const KloostermanQuery& q);

}  // namespace supnorm
