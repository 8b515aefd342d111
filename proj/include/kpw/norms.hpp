#pragma once

#include "kpw/grid.hpp"

#include <limits>

namespace kpw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class WeightKind { Polynomial, Homogeneous };

// w(x) = <scale*x>^a (Polynomial) or |scale*x|^a (Homogeneous), evaluated at
// the torus coordinate x in [-L/2, L/2)^n. The homogeneous x = 0 cell carries
// the cell average of the weight. scale != 1 serves the rescaled inequality
// forms where the weight reads <delta x>^a.
struct WeightSpec {
    WeightKind kind = WeightKind::Polynomial;
    double a = 0.0;
    double scale = 1.0;
};

// (sum_i |f(x_i)|^p w(x_i) h^n)^{1/p}; for p = inf the unweighted sup.
double weighted_norm(const GridFunction& f, double p, double a);
double weighted_norm(const GridFunction& f, double p, const WeightSpec& w);

// Exponents tied by 1/p = 1/p1 + 1/p2 and a/p = a1/p1 + a2/p2 (1/inf = 0).
struct ExponentTuple {
    double p = 1, p1 = 2, p2 = 2;
    double a = 0, a1 = 0, a2 = 0;

    void validate() const; // throws std::invalid_argument when relations fail
};

ExponentTuple holder_exponents(double p1, double p2, double a1, double a2);

// Inner norm over the leading dot_dim axes, outer norm over the rest.
struct MixedSpec {
    int dot_dim = 1;
    double p_dot = 2, a_dot = 0;
    int ddot_dim = 1;
    double p_ddot = 2, a_ddot = 0;
    WeightKind kind = WeightKind::Polynomial;
    double scale = 1.0;
};

double mixed_norm(const GridFunction& f, const MixedSpec& spec);

// lhs = l^u norm of k -> min(2^{ka} A, 2^{-kb} B) over k in [-K, K];
// rhs = A^{b/(a+b)} B^{a/(a+b)}.
struct InterpBound {
    double lhs = 0, rhs = 0;
};
InterpBound interp_sequence_bound(double a, double b, double A, double B, double u, int K);

// Circular (torus) convolution with the Riemann measure h^n; direct summation.
GridFunction discrete_convolution(const GridFunction& f, const GridFunction& g);

} // namespace kpw
