#pragma once

#include <functional>

namespace kpw {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

// Tanh-sinh (double-exponential) rule on [a, b] with level doubling until the
// inter-level difference meets rel_tol.
QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, int max_level = 12);

// Classic adaptive Simpson; tol is absolute-plus-relative against the running value.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11, int max_depth = 40);

} // namespace kpw
