#include "supnorm/window.hpp"

#include <algorithm>
#include <cmath>

#include "supnorm/arithmetic.hpp"

namespace supnorm {

std::string shape_name(WindowShape s) { return s == WindowShape::Plateau ? "plateau" : "bump"; }

WindowShape parse_shape(const std::string& s) {
    if (s == "plateau") return WindowShape::Plateau;
    if (s == "bump") return WindowShape::Bump;
    throw DomainError("unknown window shape '" + s + "'");
}

namespace {
double fpos(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }
}  // namespace

double smooth_step(double u) {
    if (u <= 0) return 0.0;
    if (u >= 1) return 1.0;
    double a = fpos(u), b = fpos(1 - u);
    return a / (a + b);
}

double smooth_step_derivative(double u) {
    if (u <= 0 || u >= 1) return 0.0;
    double a = fpos(u), b = fpos(1 - u);
    double da = a / (u * u), db = b / ((1 - u) * (1 - u));
    return (da * b + a * db) / ((a + b) * (a + b));
}

double dyadic_bump(double x) {
    if (x <= 0.5 || x >= 2.0) return 0.0;
    double s = std::log2(x);
    return std::exp(-1.0 / (1.0 - s * s));
}

SmoothWindow::SmoothWindow(double Z, double T, WindowShape shape) : Z_(Z), T_(T), shape_(shape) {
    if (!(Z >= 1.0)) throw DomainError("SmoothWindow: need Z >= 1");
    if (!(T >= 1.0 && T <= Z)) throw DomainError("SmoothWindow: need 1 <= T <= Z");
    double w = std::min(T, 0.75 * Z);
    wr_ = w;
    wl_ = w / std::sqrt(2.0);
}

double SmoothWindow::plateau_lo() const { return shape_ == WindowShape::Plateau ? lo() + wl_ : Z_; }
double SmoothWindow::plateau_hi() const { return shape_ == WindowShape::Plateau ? hi() - wr_ : Z_; }

double SmoothWindow::operator()(double x) const {
    if (shape_ == WindowShape::Bump) return dyadic_bump(x / Z_);
    return smooth_step((x - lo()) / wl_) * smooth_step((hi() - x) / wr_);
}

double SmoothWindow::derivative(double x) const {
    if (shape_ == WindowShape::Bump) {
        double v = dyadic_bump(x / Z_);
        if (v == 0.0) return 0.0;
        double s = std::log2(x / Z_);
        double d = 1.0 - s * s;
        return v * (-2.0 * s / (d * d)) / (x * std::log(2.0));
    }
    double a = (x - lo()) / wl_, b = (hi() - x) / wr_;
    return smooth_step_derivative(a) / wl_ * smooth_step(b) - smooth_step(a) * smooth_step_derivative(b) / wr_;
}

}  // namespace supnorm
