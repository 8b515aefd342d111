#pragma once

#include "kpw/fft.hpp"
#include "kpw/symbol.hpp"

namespace kpw {

enum class FractionalKind { J, JDelta, D };
enum class LpKind { Delta, S, DeltaTilde };

// result = inverse transform of m(xi_k) * f_hat(xi_k); linear in f.
// Throws std::runtime_error naming the frequency if m returns a non-finite value.
GridFunction apply_symbol(const GridFunction& f, const Symbol& m);

// J = <xi>^s, JDelta = (delta^2+|xi|^2)^{s/2} (delta in (0,1]), D = |xi|^s (s > 0).
GridFunction fractional_op(const GridFunction& f, FractionalKind kind, double s,
                           double delta = 1.0);

// per-axis i*xi_a multipliers
std::vector<GridFunction> gradient(const GridFunction& f);

// Delta_j (annulus psi(2^-j xi)), S_j (ball phi(2^-j xi)),
// DeltaTilde_j = sum_{|k-j|<3} Delta_k. Any integer j.
GridFunction lp_project(const GridFunction& f, LpKind kind, int j);

// Largest |xi| (euclidean) carrying a mode above rel_tol * max mode; 0 if f = 0.
double occupied_band(const GridFunction& f, double rel_tol = 1e-13);

// Inverse transform of symbol samples, circularly shifted so the profile is
// centered at x = 0 (the dual-grid analog of the symbol's inverse transform).
GridFunction spectral_profile(const Grid& g, const Symbol& m);

// samples of e^{i k0 . x} * f; k0 must sit on the grid's frequency lattice.
GridFunction modulate(const GridFunction& f, const std::vector<double>& k0);

} // namespace kpw
