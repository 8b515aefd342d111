#pragma once

#include "kpw/spectral.hpp"

namespace kpw {

// Exact index-pair partition with P_0 = S_0 and P_k = Delta_k (k >= 1):
//   I1: low-high  (j <= k-3), I2: high-low (k <= j-3),
//   I3: diagonal  (|j-k| <= 2, (j,k) != (0,0)), I4: the (0,0) pair,
// each bucket already under J^s. I1+I2+I3+I4 reconstructs J^s(fg) exactly
// for band-limited inputs (the partition covers every pair once).
struct ParaproductTerms {
    GridFunction I1, I2, I3, I4;
};

// Same buckets built from pairwise commutators J^s(P_j f P_k g) - P_j f J^s P_k g;
// the four sum to J^s(fg) - f J^s g.
struct CommutatorTerms {
    GridFunction II1, II2, II3, II4;
};

ParaproductTerms paraproduct(const GridFunction& f, const GridFunction& g, double s, int k_max);
CommutatorTerms commutator_terms(const GridFunction& f, const GridFunction& g, double s,
                                 int k_max);

// order 1: J^s(fg) - f J^s g
// order 2: J^s(fg) - f J^s g - s grad(f) . grad(J^{s-2} g)
GridFunction commutator_lhs(const GridFunction& f, const GridFunction& g, double s, int order);

// First/second order increments of xi -> <xi+eta>^s, evaluated two ways:
// closed form and the integral representation (Taylor remainder), quadrature
// to ~1e-10. order 1:
//   <xi+eta>^s - <eta>^s = int_0^1 s xi.(t xi+eta) <t xi+eta>^{s-2} dt
// order 2:
//   <xi+eta>^s - <eta>^s - s xi.eta <eta>^{s-2}
//     = int_0^1 int_0^t [ s|xi|^2 <v>^{s-2} + s(s-2)(xi.v)^2 <v>^{s-4} ] dt' dt,
//   v = t' xi + eta  (the exact second t-derivative).
struct SymbolRemainder {
    double direct = 0.0;
    double quadrature = 0.0;
};
SymbolRemainder symbol_remainder(const std::vector<double>& xi, const std::vector<double>& eta,
                                 double s, int order);

// Applies the multiplier xi -> sigma(2^-k xi) to h through the truncated
// Fourier series of sigma on the cube [-R, R]^n: coefficients from
// oversampled trapezoid quadrature, translations realized as frequency-space
// phase factors (exact on the grid). Requires sigma to vanish off the cube
// and h to be strictly band-limited below 2^k (so S_k h = h).
GridFunction fourier_series_apply(const Symbol& sigma, double R, int k, const GridFunction& h,
                                  int m_trunc);

} // namespace kpw
