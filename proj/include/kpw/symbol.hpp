#pragma once

#include "kpw/bump.hpp"
#include "kpw/common.hpp"

#include <functional>

namespace kpw {

// Frequency-space multiplier m(xi). The evaluator must be deterministic:
// equal xi yields bit-identical output.
struct Symbol {
    enum class Kind { Bessel, BesselDelta, Riesz, Bump, Custom };

    struct Descriptor {
        Kind kind = Kind::Custom;
        double s = 0.0;
        double delta = 0.0;
        BumpKind bump = BumpKind::Phi;
        int j = 0;
    };

    Descriptor descriptor;
    std::function<cplx(const double* xi, int dim)> eval;

    cplx operator()(const double* xi, int dim) const { return eval(xi, dim); }
};

namespace symbols {

Symbol one();
Symbol bessel(double s);                      // <xi>^s
Symbol bessel_delta(double s, double delta);  // (delta^2 + |xi|^2)^{s/2}
Symbol riesz(double s);                       // |xi|^s, s > 0, value 0 at xi = 0
Symbol bump(BumpKind kind, int j);            // Phi(2^-j xi) or Psi(2^-j xi)
Symbol custom(std::function<cplx(const double*, int)> f);

} // namespace symbols

} // namespace kpw
