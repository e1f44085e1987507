#pragma once

#include <string>
#include <vector>

#include "supnorm/window.hpp"

namespace supnorm {

struct ArchimedeanParameter {
    enum class Kind { Holomorphic, Maass };
    Kind kind = Kind::Maass;
    int k = 0;       // weight, holomorphic only
    double t = 0.0;  // spectral parameter, Maass only

    static ArchimedeanParameter holomorphic(int k);
    static ArchimedeanParameter maass(double t);
    bool is_holomorphic() const { return kind == Kind::Holomorphic; }
    // (k-1)/2 or t
    double spectral() const { return is_holomorphic() ? (k - 1) / 2.0 : t; }
    double t_star() const;
    std::string describe() const;
};

// real-order Bessel functions, y > 0
double bessel_j(double order, double y);
double bessel_y(double order, double y);
double bessel_k(double order, double y);

struct KImagResult {
    double value = 0;         // cosh(pi t/2) K_{it}(y)
    double est_rel_error = 0;
    int digits = 16;          // working precision actually used
    std::string method;       // "integral" or "series"
};

// cosh(pi t/2) K_{it}(y); even in t
double bessel_k_imag(double t, double y);
KImagResult bessel_k_imag_detail(double t, double y);

// G_t(y) = -Im J_{2it}(y) / sinh(pi t) = (2/pi) int_0^inf cos(y cosh u) cos(2tu) du; G_0 = -Y_0
double imag_order_kernel(double t, double y);

// Y_{2it}(y) + Y_{-2it}(y), which is real
double bessel_y_imag_pair(double t, double y);

double whittaker_weight(const ArchimedeanParameter& p, double y);
// sign +1 or -1
double voronoi_kernel(const ArchimedeanParameter& p, int sign, double y);

enum class BesselFamily { J, Y, K };
BesselFamily parse_family(const std::string& s);
double bessel_family(BesselFamily f, double order, double y);

struct DiscrepancyReport {
    double max_discrepancy = 0;
    double worst_y = 0;
    std::size_t points = 0;
};

// central differences of J_r or K_r against the recurrence right-hand sides
DiscrepancyReport check_derivative_recurrences(BesselFamily f, double order, const std::vector<double>& y_grid,
                                               double h = 1e-5);

struct IbpReport {
    double lhs = 0;
    double rhs = 0;          // with the correct sign: - for J and Y, + for K
    double rel_error = 0;
    double literal_rhs = 0;  // with the opposite convention (+, +, -)
    bool converged = true;
};

// int g(y) F_r(a sqrt y) dy  vs  sign (2/a) int (g' sqrt y - (r/2) g / sqrt y) F_{r+1}(a sqrt y) dy
IbpReport check_ibp_identity(const SmoothWindow& g, double r, double alpha, BesselFamily f);

struct BoundFit {
    double fitted_constant = 0;  // max of |value| / shape over the grid
    double worst_point = 0;
    std::size_t instances = 0;
};

// cosh(pi t/2)|K_{it}(w)| <= C min(t^{-1/3}, |w^2 - t^2|^{-1/4})
BoundFit check_kbessel_transition_bound(double t, const std::vector<double>& w_grid);

// argument of Gamma(1 + i t), continuous in t
double arg_gamma_1_plus_it(double t);

}  // namespace supnorm
