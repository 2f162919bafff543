#pragma once

#include <array>
#include <functional>

namespace triconic {

struct Minimum2 {
    std::array<double, 2> x{};
    double value = 0;
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead (GSL nmsimplex2) in two variables.
Minimum2 nelder_mead(const std::function<double(double, double)>& f, std::array<double, 2> x0, double step,
                     int max_iter = 200, double size_tol = 1e-12);

// Levenberg-Marquardt on three residuals of two variables, forward-difference Jacobian
// (Eigen unsupported). Returns the refined point.
std::array<double, 2> least_squares_refine(const std::function<std::array<double, 3>(double, double)>& r,
                                           std::array<double, 2> x0, int max_eval = 400);

// Brent root on [lo, hi]; requires a sign change. Returns nothing without one.
bool brent_root(const std::function<double(double)>& f, double lo, double hi, double xtol, double& root);

// Plain bisection to the last representable bit (robust for non-smooth sign functions).
double bisect_root(const std::function<double(double)>& f, double lo, double hi, int iters = 80);

}  // namespace triconic
