#pragma once

namespace kpw {

// Radial C^inf cutoff pair. phi(r) = 1 for r <= 1, 0 for r >= 2, with the
// exp(-1/t) glue in between; psi(r) = phi(r) - phi(2r) is supported on
// [1/2, 2] and the dyadic family telescopes exactly:
//   phi(r) + sum_{j=1..K} psi(2^-j r) = phi(2^-K r).
namespace bump {

double phi(double r);
double psi(double r);

} // namespace bump

enum class BumpKind { Phi, Psi };

double evaluate_bump(BumpKind kind, const double* xi, int dim);

} // namespace kpw
