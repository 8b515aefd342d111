#pragma once

#include "kpw/grid.hpp"

namespace kpw {

// One quadrature evaluation of the kernel
//   K_s^delta(y) = int_0^inf exp(-|y|^2/t) exp(-delta^2 t) t^{-(s+n)/2} dt/t,
// the convolution kernel of (delta^2 - Laplace)^{s/2} for s < 0.
struct KernelEval {
    double radius = 0.0;
    double s = 0.0;
    double delta = 1.0;
    int dim = 1;
    double value = 0.0;
    double quad_error_estimate = 0.0;
};

// Direct evaluation; requires y_abs > 0, delta in (0,1], s in [-n, 0).
// s >= 0 is rejected: the integral is then not the kernel of the operator
// (that regime needs the analytic continuation, which is out of scope), and
// s < -n is rejected (no delta-uniform bound; also outside the contract).
KernelEval kernel_ks_delta(double y_abs, double s, double delta, int n);

struct EnvelopeCheck {
    double value = 0.0;
    double envelope = 0.0;
    bool pass = false;
};

// Envelope C * y^{-(n+s)} exp(-4 delta y/(n+s+2)), C calibrated once per (s,n)
// at (y=1, delta=1) and held fixed; pass iff value <= 10 * envelope.
EnvelopeCheck kernel_bound_check(double y_abs, double s, double delta, int n);

struct DecayFit {
    std::vector<double> radii;
    std::vector<double> values;
    double fitted_exponent = 0.0;
    double fit_residual = 0.0;
};

// Least-squares slope of log(value) against log(radius); needs >= 4 samples,
// strictly increasing radii, strictly positive values.
DecayFit tail_exponent_fit(const std::vector<double>& radii, const std::vector<double>& values);

// Samples max |J^s_delta f| over the shell |x| in [r 2^-1/4, r 2^1/4] at each
// radius (computed spectrally) and fits the tail exponent.
DecayFit jsdelta_tail_profile(const GridFunction& f, double s, double delta,
                              const std::vector<double>& radii);

// J^s_delta f computed as a discrete convolution against quadrature samples of
// K_s^delta (the x = 0 cell carries the kernel's cell average). Independent of
// the spectral multiplier path; s in [-n, 0).
GridFunction kernel_convolution_oracle(const GridFunction& f, double s, double delta);

} // namespace kpw
