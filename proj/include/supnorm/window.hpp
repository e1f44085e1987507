#pragma once

#include <string>

namespace supnorm {

// fixed C-infinity shapes supported on [Z/2, 2Z]
enum class WindowShape {
    Plateau,  // flat top, edges of width ~T
    Bump      // exp(-1/(1-s^2)) in s = log2(x/Z); derivative scale Z
};

std::string shape_name(WindowShape s);
WindowShape parse_shape(const std::string& s);

class SmoothWindow {
public:
    SmoothWindow(double Z, double T, WindowShape shape = WindowShape::Plateau);

    double Z() const { return Z_; }
    double T() const { return T_; }
    WindowShape shape() const { return shape_; }
    double lo() const { return 0.5 * Z_; }
    double hi() const { return 2.0 * Z_; }

    double operator()(double x) const;
    double derivative(double x) const;
    // plateau region [plateau_lo, plateau_hi] where the window is exactly 1 (empty for Bump)
    double plateau_lo() const;
    double plateau_hi() const;
    // edge widths, left smaller than right so no symmetry forces exact cancellation
    double left_width() const { return wl_; }
    double right_width() const { return wr_; }

private:
    double Z_, T_;
    WindowShape shape_;
    double wl_ = 0, wr_ = 0;
};

// smooth step: 0 for u <= 0, 1 for u >= 1
double smooth_step(double u);
double smooth_step_derivative(double u);

// psi(x) = b(log2 x), b(s) = exp(-1/(1-s^2)); support (1/2, 2)
double dyadic_bump(double x);

}  // namespace supnorm
