#include "supnorm/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "supnorm/exponents.hpp"

namespace supnorm {

using std::numbers::pi;

// ---- Dirichlet approximation

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw DomainError("exact_rational: non-finite input");
    int e = 0;
    double m = std::frexp(x, &e);
    // 53-bit mantissa as an integer
    auto mi = static_cast<long long>(std::ldexp(m, 53));
    e -= 53;
    Rational r{BigInt(mi)};
    if (e > 0) r *= Rational(BigInt(1) << e);
    if (e < 0) r /= Rational(BigInt(1) << -e);
    return r;
}

bool RationalApproximation::valid() const {
    if (q < 1) return false;
    if (std::gcd(a < 0 ? -a : a, q) != 1) return false;
    const Rational Hq = exact_rational(H);
    if (Rational(q) > Hq) return false;
    Rational b = beta < 0 ? Rational(-beta) : beta;
    if (b * Rational(q) * Hq > 1) return false;
    return x - Rational(a, q) == beta;
}

RationalApproximation dirichlet_approximate(const Rational& x, double H) {
    if (!(H >= 1)) throw DomainError("dirichlet_approximate: need H >= 1");
    const Rational Hq = exact_rational(H);
    using boost::multiprecision::numerator;
    using boost::multiprecision::denominator;
    auto floor_of = [](const Rational& r) {
        BigInt n = numerator(r), d = denominator(r);
        BigInt f = n / d;
        if (n < 0 && f * d != n) f -= 1;
        return f;
    };
    BigInt p_prev = 1, q_prev = 0;
    BigInt a0 = floor_of(x);
    BigInt p = a0, q = 1;
    Rational rem = x - Rational(a0);
    while (rem != 0) {
        Rational inv = 1 / rem;
        BigInt an = floor_of(inv);
        BigInt p_next = an * p + p_prev, q_next = an * q + q_prev;
        if (Rational(q_next) > Hq) break;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        rem = inv - Rational(an);
    }
    RationalApproximation r;
    r.x = x;
    r.a = static_cast<i64>(p);
    r.q = static_cast<i64>(q);
    r.H = H;
    r.beta = x - Rational(p, q);
    return r;
}

RationalApproximation dirichlet_approximate(double x, double H) { return dirichlet_approximate(exact_rational(x), H); }

// ---- Poisson decay of windowed exponential sums

using mp = boost::multiprecision::cpp_bin_float_50;

Frequency Frequency::rational(const Rational& r) {
    Frequency f;
    f.exact = r;
    f.name = rational_str(r);
    return f;
}

Frequency Frequency::golden() {
    Frequency f;
    f.name = "golden";
    return f;
}

Frequency Frequency::parse(const std::string& s) {
    if (s == "golden") return golden();
    if (s.find('/') != std::string::npos) return rational(parse_rational(s));
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        // decimal input is read as the decimal fraction it spells
        auto dot = s.find('.');
        if (dot == std::string::npos) return rational(Rational(BigInt(s)));
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        (void)v;
        return rational(Rational(BigInt(digits), den));
    } catch (const std::exception&) {
        throw DomainError("bad frequency '" + s + "'");
    }
}

namespace {
mp golden_mp() { return (boost::multiprecision::sqrt(mp(5)) - 1) / 2; }
}  // namespace

double Frequency::approx() const { return exact ? static_cast<double>(*exact) : static_cast<double>(golden_mp()); }

double Frequency::dist_to_int() const {
    if (exact) {
        Rational f = frac(*exact);
        Rational d = f > Rational(1, 2) ? Rational(1 - f) : f;
        return static_cast<double>(d);
    }
    mp g = golden_mp();
    return static_cast<double>(std::min(g, mp(1) - g));
}

namespace {

mp step_mp(const mp& u) {
    if (u <= 0) return mp(0);
    if (u >= 1) return mp(1);
    mp a = exp(-1 / u), b = exp(-1 / (1 - u));
    return a / (a + b);
}

mp window_mp(const SmoothWindow& w, const mp& x, const mp& wl, const mp& wr) {
    const mp Z(w.Z());
    if (w.shape() == WindowShape::Bump) {
        mp r = x / Z;
        if (r <= mp(0.5) || r >= mp(2)) return mp(0);
        mp s = log(r) / log(mp(2));
        return exp(-1 / (1 - s * s));
    }
    return step_mp((x - Z / 2) / wl) * step_mp((2 * Z - x) / wr);
}

// e(alpha m) as (cos, sin) of 2 pi {alpha m}
struct Phase {
    const Frequency& f;
    mp g = golden_mp();
    mp twopi = 2 * boost::math::constants::pi<mp>();
    mp angle(i64 m) const {
        if (f.exact) {
            BigInt num = boost::multiprecision::numerator(*f.exact), den = boost::multiprecision::denominator(*f.exact);
            BigInt r = (num * m) % den;
            if (r < 0) r += den;
            return twopi * mp(r) / mp(den);
        }
        mp v = g * m;
        return twopi * (v - floor(v));
    }
};

}  // namespace

double lemma4_sum_abs(const SmoothWindow& w, const Frequency& alpha) {
    if (alpha.dist_to_int() == 0.0) throw DomainError("lemma4: alpha must not be an integer");
    Phase ph{alpha};
    const double Z = w.Z();
    const mp wl = mp(std::min(w.T(), 0.75 * Z)) / sqrt(mp(2));
    const mp wr = mp(std::min(w.T(), 0.75 * Z));
    const i64 m_first = static_cast<i64>(std::floor(Z / 2)) + 1;
    const i64 m_last = static_cast<i64>(std::ceil(2 * Z)) - 1;
    i64 p0 = m_last + 1, p1 = m_last;  // plateau [p0, p1], empty by default
    if (w.shape() == WindowShape::Plateau) {
        const mp zz(Z);
        p0 = static_cast<i64>(std::ceil(static_cast<double>(zz / 2 + wl)));
        while (mp(p0) - zz / 2 < wl) ++p0;
        while (mp(p0 - 1) - zz / 2 >= wl) --p0;
        p1 = static_cast<i64>(std::floor(static_cast<double>(2 * zz - wr)));
        while (2 * zz - mp(p1) < wr) --p1;
        while (2 * zz - mp(p1 + 1) >= wr) ++p1;
        if (p1 < p0) {
            p0 = m_last + 1;
            p1 = m_last;
        }
    }
    mp re = 0, im = 0;
    for (i64 m = m_first; m <= m_last; ++m) {
        if (m >= p0 && m <= p1) {
            m = p1;
            continue;
        }
        mp v = window_mp(w, mp(m), wl, wr);
        if (v == 0) continue;
        mp a = ph.angle(m);
        re += v * cos(a);
        im += v * sin(a);
    }
    if (p0 <= p1) {
        // sum_{m=p0}^{p1} e(alpha m) = e(alpha p0) (1 - e(alpha n)) / (1 - e(alpha))
        const i64 n = p1 - p0 + 1;
        mp a0 = ph.angle(p0), an = ph.angle(n), a1 = ph.angle(1);
        mp nr = 1 - cos(an), ni = -sin(an);
        mp dr = 1 - cos(a1), di = -sin(a1);
        mp dd = dr * dr + di * di;
        mp qr = (nr * dr + ni * di) / dd, qi = (ni * dr - nr * di) / dd;
        mp c0 = cos(a0), s0 = sin(a0);
        re += c0 * qr - s0 * qi;
        im += c0 * qi + s0 * qr;
    }
    return static_cast<double>(sqrt(re * re + im * im));
}

DecayReport lemma4_decay_check(const SmoothWindow& w, const Frequency& alpha, int j) {
    if (j < 2) throw DomainError("lemma4: need j >= 2");
    DecayReport r;
    r.sum_abs = lemma4_sum_abs(w, alpha);
    r.bound = w.Z() * std::pow(w.T() * alpha.dist_to_int(), -j);
    r.ratio = r.sum_abs / r.bound;
    return r;
}

SlopeFit lemma4_slope(const std::vector<double>& Ts, const std::vector<double>& sums, double floor_value) {
    SlopeFit fit;
    const std::size_t n = std::min(Ts.size(), sums.size());
    std::vector<double> env(n);
    double run = 0;
    for (std::size_t i = n; i-- > 0;) {
        run = std::max(run, sums[i]);
        env[i] = run;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // below the floor the sum is indistinguishable from zero; nothing more to fit
        if (env[i] < floor_value) break;
        double x = std::log(Ts[i]), y = std::log(env[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++fit.points;
    }
    if (fit.points >= 2) {
        double k = static_cast<double>(fit.points);
        fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }
    return fit;
}

// ---- dyadic partition

double dyadic_partition_piece(double x) {
    double p = dyadic_bump(x);
    if (p == 0.0) return 0.0;
    double den = 0;
    for (int k = -2; k <= 2; ++k) den += dyadic_bump(std::ldexp(x, -k));
    return p / den;
}

double partition_sum(double x) {
    if (!(x >= 1)) throw DomainError("partition_sum: need x >= 1");
    double s = 0;
    int top = static_cast<int>(std::ceil(std::log2(x))) + 1;
    for (int nu = 0; nu <= top; ++nu) s += dyadic_partition_piece(std::ldexp(x, -nu));
    return s;
}

PartitionReport partition_check(const std::vector<double>& xs) {
    PartitionReport r;
    for (double x : xs) {
        double e = std::fabs(partition_sum(x) - 1.0);
        if (e > r.max_error || r.worst_x == 0) {
            r.max_error = std::max(r.max_error, e);
            r.worst_x = x;
        }
    }
    return r;
}

// ---- integrals against the Voronoi kernel

namespace {

// split at the plateau ends; edges need resolution for the window, the rest for the kernel
double voronoi_quad(const SmoothWindow& w, const ArchimedeanParameter& p, int sign, double alpha, int refine) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    auto f = [&](double xi) {
        double g = w(xi);
        return g == 0.0 ? 0.0 : g * voronoi_kernel(p, sign, alpha * std::sqrt(xi));
    };
    std::vector<std::pair<double, bool>> cuts{{w.lo(), true}};  // (start, is_edge)
    if (w.shape() == WindowShape::Plateau && w.plateau_lo() < w.plateau_hi()) {
        cuts.push_back({w.plateau_lo(), false});
        cuts.push_back({w.plateau_hi(), true});
    }
    cuts.push_back({w.hi(), false});
    double s = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i].first, b = cuts[i + 1].first;
        // kernel argument 4 pi alpha sqrt(xi) runs through this many cycles
        const double cycles = 2 * alpha * (std::sqrt(b) - std::sqrt(a));
        int panels = static_cast<int>(std::max(cuts[i].second ? 16.0 : 4.0, 2 * cycles)) * refine;
        const double h = (b - a) / panels;
        for (int k = 0; k < panels; ++k) s += GL::integrate(f, a + k * h, a + (k + 1) * h);
    }
    return s;
}
}  // namespace

IntegralResult voronoi_integral(const SmoothWindow& w, const ArchimedeanParameter& p, int sign, double alpha) {
    if (!(alpha > 0)) throw DomainError("voronoi_integral: alpha must be positive");
    IntegralResult r;
    if (p.is_holomorphic() && sign < 0) return r;  // kernel is identically zero
    double v1 = voronoi_quad(w, p, sign, alpha, 1);
    double v2 = voronoi_quad(w, p, sign, alpha, 2);
    r.value = v2;
    r.abs_error = std::fabs(v2 - v1);
    r.converged = r.abs_error <= 1e-8 * w.Z();
    return r;
}

double lemma6_bound1(double Z, double t_star, double alpha) { return std::pow(Z, 0.75) * t_star / std::sqrt(alpha); }

double lemma6_bound2(double Z, double T, double t_star, double alpha, int j) {
    double f = (std::sqrt(Z) / T + t_star / std::sqrt(Z)) / alpha;
    return std::pow(f, j) * lemma6_bound1(Z, t_star, alpha);
}

bool lemma6_bound2_applies(double Z, double t_star, double alpha) { return alpha * std::sqrt(Z / 2) >= 2 * t_star; }

double lemma8_bound(i64 q, double beta, double Z, double t_star, double eps_factor) {
    if (q < 1 || Z < 1 || t_star < 1) throw DomainError("lemma8_bound: need q, Z, t* >= 1");
    double b = std::fabs(beta);
    return eps_factor * std::pow(t_star, 1.5) * static_cast<double>(q) *
           (std::pow(b, 1.5) * Z + std::pow(t_star, 1.5) / std::sqrt(Z));
}

}  // namespace supnorm
