#include "supnorm/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "supnorm/arithmetic.hpp"

namespace supnorm {

using std::numbers::pi;

ArchimedeanParameter ArchimedeanParameter::holomorphic(int k) {
    if (k < 2 || k % 2 != 0) throw DomainError("holomorphic weight must be even and >= 2");
    ArchimedeanParameter p;
    p.kind = Kind::Holomorphic;
    p.k = k;
    return p;
}

ArchimedeanParameter ArchimedeanParameter::maass(double t) {
    ArchimedeanParameter p;
    p.kind = Kind::Maass;
    p.t = t;
    return p;
}

double ArchimedeanParameter::t_star() const { return 1.0 + std::fabs(spectral()); }

std::string ArchimedeanParameter::describe() const {
    return is_holomorphic() ? "holomorphic k=" + std::to_string(k) : "maass t=" + std::to_string(t);
}

namespace {
void need_positive(double y, const char* who) {
    if (!(y > 0)) throw DomainError(std::string(who) + ": y must be positive");
}
}  // namespace

double bessel_j(double order, double y) {
    need_positive(y, "bessel_j");
    return boost::math::cyl_bessel_j(order, y);
}

double bessel_y(double order, double y) {
    need_positive(y, "bessel_y");
    return boost::math::cyl_neumann(order, y);
}

double bessel_k(double order, double y) {
    need_positive(y, "bessel_k");
    return boost::math::cyl_bessel_k(std::fabs(order), y);
}

// ---- G_t(y)

namespace {

// Hankel expansion; false if the series never gets small enough
bool hankel_G(double t, double y, double& out) {
    const std::complex<double> I(0, 1);
    std::complex<double> sum = 1, ik = 1;
    double a = 1, prev = 1;
    bool ok = false;
    for (int k = 1; k < 80; ++k) {
        a *= (-16.0 * t * t - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * y);
        if (std::fabs(a) > prev) break;
        prev = std::fabs(a);
        ik *= I;
        sum += ik * a;
        if (prev < 1e-16) {
            ok = true;
            break;
        }
    }
    if (!ok) return false;
    auto ph = std::polar(1.0, y - pi / 4);
    out = std::real(I * std::sqrt(2.0 / (pi * y)) * ph * sum);
    return true;
}

// (1/pi) Re int exp(i y cosh s + 2 i t s) ds along s = u + i beta tanh(u)
double path_G(double t, double y) {
    const double beta = std::min(1.0, 1.0 / t);
    auto decay = [&](double u) { return y * std::sinh(u) * std::sin(beta * std::tanh(u)) - 2 * t * beta; };
    double U = std::asinh(50.0 / (y * std::sin(beta)));
    while (decay(U) < 42.0) U *= 1.25;
    const std::complex<double> I(0, 1);
    auto f = [&](double u) {
        double th = std::tanh(u);
        std::complex<double> s(u, beta * th);
        std::complex<double> ds(1.0, beta * (1 - th * th));
        return std::exp(I * y * std::cosh(s) + 2.0 * I * t * s) * ds;
    };
    using GL = boost::math::quadrature::gauss<double, 16>;
    std::complex<double> acc = 0;
    double u = -U;
    while (u < U) {
        // size from whichever end oscillates faster; a panel may straddle u = 0
        double h = std::min(1.0, 8.0 / (y * std::fabs(std::sinh(u)) + 2 * t + 1));
        for (int it = 0; it < 2; ++it) {
            double sh = std::max(std::fabs(std::sinh(u)), std::fabs(std::sinh(u + h)));
            h = std::min(h, 8.0 / (y * sh + 2 * t + 1));
        }
        double b = std::min(u + h, U);
        acc += GL::integrate([&](double x) { return f(x).real(); }, u, b);
        u = b;
    }
    return acc.real() / pi;
}

}  // namespace

double imag_order_kernel(double t, double y) {
    need_positive(y, "imag_order_kernel");
    t = std::fabs(t);
    if (t == 0.0) return -boost::math::cyl_neumann(0, y);
    double v;
    if (y > 25.0 + 4.0 * t * t && hankel_G(t, y, v)) return v;
    return path_G(t, y);
}

double bessel_y_imag_pair(double t, double y) {
    need_positive(y, "bessel_y_imag_pair");
    return -2.0 * std::cosh(pi * t) * imag_order_kernel(t, y);
}

double whittaker_weight(const ArchimedeanParameter& p, double y) {
    need_positive(y, "whittaker_weight");
    if (p.is_holomorphic()) {
        double k = p.k;
        return std::exp(-0.5 * std::lgamma(k) + 0.5 * k * std::log(4 * pi * y) - 2 * pi * y);
    }
    return std::sqrt(y) * bessel_k_imag(p.t, 2 * pi * y);
}

double voronoi_kernel(const ArchimedeanParameter& p, int sign, double y) {
    need_positive(y, "voronoi_kernel");
    if (sign != 1 && sign != -1) throw DomainError("voronoi_kernel: sign must be +1 or -1");
    if (p.is_holomorphic()) return sign > 0 ? 2 * pi * bessel_j(p.k - 1, 4 * pi * y) : 0.0;
    // pi/cosh(pi t) (Y_{2it} + Y_{-2it}) = -2 pi G_t
    if (sign > 0) return -2 * pi * imag_order_kernel(p.t, 4 * pi * y);
    return 4.0 * bessel_k_imag(2 * p.t, 4 * pi * y);
}

BesselFamily parse_family(const std::string& s) {
    if (s == "J") return BesselFamily::J;
    if (s == "Y") return BesselFamily::Y;
    if (s == "K") return BesselFamily::K;
    throw DomainError("unknown Bessel family '" + s + "'");
}

double bessel_family(BesselFamily f, double order, double y) {
    switch (f) {
        case BesselFamily::J: return bessel_j(order, y);
        case BesselFamily::Y: return bessel_y(order, y);
        case BesselFamily::K: return bessel_k(order, y);
    }
    return 0;
}

DiscrepancyReport check_derivative_recurrences(BesselFamily f, double order, const std::vector<double>& y_grid,
                                               double h) {
    if (f == BesselFamily::Y) throw DomainError("derivative recurrence check covers J and K");
    DiscrepancyReport rep;
    for (double y : y_grid) {
        double fd = (bessel_family(f, order, y + h) - bessel_family(f, order, y - h)) / (2 * h);
        double rhs = f == BesselFamily::J ? 0.5 * (bessel_j(order - 1, y) - bessel_j(order + 1, y))
                                          : -0.5 * (bessel_k(order - 1, y) + bessel_k(order + 1, y));
        double d = std::fabs(fd - rhs);
        if (d > rep.max_discrepancy || rep.points == 0) {
            rep.max_discrepancy = std::max(rep.max_discrepancy, d);
            rep.worst_y = y;
        }
        ++rep.points;
    }
    return rep;
}

namespace {
template <class F>
double composite(F&& f, double a, double b, int panels) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    double h = (b - a) / panels, s = 0;
    for (int i = 0; i < panels; ++i) s += GL::integrate(f, a + i * h, a + (i + 1) * h);
    return s;
}
}  // namespace

IbpReport check_ibp_identity(const SmoothWindow& g, double r, double alpha, BesselFamily f) {
    if (!(alpha > 0)) throw DomainError("check_ibp_identity: alpha must be positive");
    const double a = g.lo(), b = g.hi();
    auto lhs_f = [&](double y) { return g(y) * bessel_family(f, r, alpha * std::sqrt(y)); };
    auto rhs_f = [&](double y) {
        double sy = std::sqrt(y);
        return (g.derivative(y) * sy - 0.5 * r * g(y) / sy) * bessel_family(f, r + 1, alpha * sy);
    };
    // oscillation count of F(alpha sqrt y) over the support, plus resolution of the edges
    // for K the same count measures how many e-foldings the decay covers
    double osc = alpha * (std::sqrt(b) - std::sqrt(a)) / (f == BesselFamily::K ? 1.0 : 2 * pi);
    double edge = (b - a) / std::min(g.left_width(), g.right_width());
    int panels = static_cast<int>(std::max({32.0, 4 * osc, 8 * edge}));
    IbpReport rep;
    double l1 = composite(lhs_f, a, b, panels), l2 = composite(lhs_f, a, b, 2 * panels);
    double r1 = composite(rhs_f, a, b, panels), r2 = composite(rhs_f, a, b, 2 * panels);
    rep.lhs = l2;
    double mag = (2 / alpha) * r2;
    rep.rhs = f == BesselFamily::K ? mag : -mag;
    rep.literal_rhs = f == BesselFamily::K ? -mag : mag;
    double scale = std::max({std::fabs(l2), std::fabs(rep.rhs), 1e-300});
    // doubling noise is measured against the integrand mass, not the possibly cancelled result
    double mass = composite([&](double y) { return std::fabs(lhs_f(y)); }, a, b, panels);
    double tol = 1e-10 * std::max(scale, mass) + 1e-300;
    rep.converged = std::fabs(l1 - l2) <= tol && std::fabs(r1 - r2) * (2 / alpha) <= tol;
    rep.rel_error = std::fabs(rep.lhs - rep.rhs) / scale;
    return rep;
}

BoundFit check_kbessel_transition_bound(double t, const std::vector<double>& w_grid) {
    if (!(t >= 2)) throw DomainError("check_kbessel_transition_bound: need t >= 2");
    BoundFit fit;
    for (double w : w_grid) {
        double v = std::fabs(bessel_k_imag(t, w));
        double d = std::fabs(w * w - t * t);
        double shape = std::pow(t, -1.0 / 3);
        if (d > 0) shape = std::min(shape, std::pow(d, -0.25));
        double ratio = v / shape;
        if (ratio > fit.fitted_constant) {
            fit.fitted_constant = ratio;
            fit.worst_point = w;
        }
        ++fit.instances;
    }
    return fit;
}

}  // namespace supnorm
