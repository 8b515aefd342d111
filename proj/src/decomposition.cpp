#include "kpw/decomposition.hpp"

#include "kpw/quadrature.hpp"
#include "kpw/simd/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace kpw {

namespace {

std::vector<GridFunction> p_family(const GridFunction& f, int k_max) {
    std::vector<GridFunction> p;
    p.reserve(k_max + 1);
    p.push_back(lp_project(f, LpKind::S, 0));
    for (int k = 1; k <= k_max; ++k) p.push_back(lp_project(f, LpKind::Delta, k));
    return p;
}

void check_band(const GridFunction& f, const GridFunction& g, int k_max) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("grid mismatch");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    const double half_nyq = 0.5 * f.grid.nyquist();
    const double cap = std::exp2(double(k_max));
    for (const GridFunction* h : {&f, &g}) {
        const double band = occupied_band(*h);
        if (band > half_nyq)
            throw std::invalid_argument("input not band-limited below half-Nyquist");
        if (band > cap)
            throw std::invalid_argument("k_max too small for the occupied band");
    }
}

// bucket of an index pair: 0 -> I1 (low-high), 1 -> I2, 2 -> I3, 3 -> I4
int bucket_of(int j, int k) {
    if (j == 0 && k == 0) return 3;
    if (j <= k - 3) return 0;
    if (k <= j - 3) return 1;
    return 2;
}

void accumulate(GridFunction& dst, const GridFunction& a, const GridFunction& b,
                std::vector<cplx>& scratch) {
    simd::active().cmul(scratch.data(), a.samples.data(), b.samples.data(), scratch.size());
    for (std::size_t i = 0; i < scratch.size(); ++i) dst.samples[i] += scratch[i];
}

} // namespace

ParaproductTerms paraproduct(const GridFunction& f, const GridFunction& g, double s, int k_max) {
    check_band(f, g, k_max);
    const auto pf = p_family(f, k_max);
    const auto pg = p_family(g, k_max);
    GridFunction sums[4] = {GridFunction(f.grid), GridFunction(f.grid), GridFunction(f.grid),
                            GridFunction(f.grid)};
    std::vector<cplx> scratch(f.grid.total_points());
    for (int j = 0; j <= k_max; ++j)
        for (int k = 0; k <= k_max; ++k)
            accumulate(sums[bucket_of(j, k)], pf[j], pg[k], scratch);
    ParaproductTerms t{fractional_op(sums[0], FractionalKind::J, s),
                       fractional_op(sums[1], FractionalKind::J, s),
                       fractional_op(sums[2], FractionalKind::J, s),
                       fractional_op(sums[3], FractionalKind::J, s)};
    return t;
}

CommutatorTerms commutator_terms(const GridFunction& f, const GridFunction& g, double s,
                                 int k_max) {
    check_band(f, g, k_max);
    const auto pf = p_family(f, k_max);
    const auto pg = p_family(g, k_max);
    std::vector<GridFunction> jpg;
    jpg.reserve(k_max + 1);
    for (const auto& pk : pg) jpg.push_back(fractional_op(pk, FractionalKind::J, s));

    GridFunction prod[4] = {GridFunction(f.grid), GridFunction(f.grid), GridFunction(f.grid),
                            GridFunction(f.grid)};
    GridFunction cross[4] = {GridFunction(f.grid), GridFunction(f.grid), GridFunction(f.grid),
                             GridFunction(f.grid)};
    std::vector<cplx> scratch(f.grid.total_points());
    for (int j = 0; j <= k_max; ++j)
        for (int k = 0; k <= k_max; ++k) {
            const int b = bucket_of(j, k);
            accumulate(prod[b], pf[j], pg[k], scratch);
            accumulate(cross[b], pf[j], jpg[k], scratch);
        }
    CommutatorTerms t{fractional_op(prod[0], FractionalKind::J, s) - cross[0],
                      fractional_op(prod[1], FractionalKind::J, s) - cross[1],
                      fractional_op(prod[2], FractionalKind::J, s) - cross[2],
                      fractional_op(prod[3], FractionalKind::J, s) - cross[3]};
    return t;
}

GridFunction commutator_lhs(const GridFunction& f, const GridFunction& g, double s, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("commutator order must be 1 or 2");
    GridFunction lhs = fractional_op(f * g, FractionalKind::J, s) -
                       f * fractional_op(g, FractionalKind::J, s);
    if (order == 2) {
        // The correction term carries the bilinear symbol s xi.eta <eta>^{s-2}
        // (the first-order Taylor term of <xi+eta>^s at xi = 0); with true
        // gradients (i xi factors) that is +s grad f . grad J^{s-2} g.
        // The polynomial case pins the sign: at s = 2 the remainder symbol is
        // |xi|^2, so the result must reduce to (|grad|^2 f) g mode-wise.
        const auto gf = gradient(f);
        const auto gj = gradient(fractional_op(g, FractionalKind::J, s - 2.0));
        GridFunction dot(f.grid);
        std::vector<cplx> scratch(f.grid.total_points());
        for (int a = 0; a < f.grid.dim; ++a) {
            simd::active().cmul(scratch.data(), gf[a].samples.data(), gj[a].samples.data(),
                                scratch.size());
            for (std::size_t i = 0; i < scratch.size(); ++i) dot.samples[i] += scratch[i];
        }
        lhs = lhs + cplx(s, 0.0) * dot;
    }
    return lhs;
}

namespace {

inline double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
    return d;
}

inline double jap2(const std::vector<double>& v) { return 1.0 + dotv(v, v); } // <v>^2

} // namespace

SymbolRemainder symbol_remainder(const std::vector<double>& xi, const std::vector<double>& eta,
                                 double s, int order) {
    if (xi.size() != eta.size() || xi.empty())
        throw std::invalid_argument("symbol_remainder: dimension mismatch");
    if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");

    const std::size_t n = xi.size();
    std::vector<double> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = xi[i] + eta[i];
    const double xixi = dotv(xi, xi);
    const double xieta = dotv(xi, eta);

    auto v_at = [&](double t) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = t * xi[i] + eta[i];
        return v;
    };

    SymbolRemainder r;
    if (order == 1) {
        r.direct = std::pow(jap2(sum), 0.5 * s) - std::pow(jap2(eta), 0.5 * s);
        auto integrand = [&](double t) {
            const auto v = v_at(t);
            return s * (t * xixi + xieta) * std::pow(jap2(v), 0.5 * s - 1.0);
        };
        r.quadrature = adaptive_simpson(integrand, 0.0, 1.0, 1e-12);
    } else {
        r.direct = std::pow(jap2(sum), 0.5 * s) - std::pow(jap2(eta), 0.5 * s) -
                   s * xieta * std::pow(jap2(eta), 0.5 * s - 1.0);
        auto second_derivative = [&](double tp) {
            const auto v = v_at(tp);
            const double v2 = jap2(v);
            const double xv = tp * xixi + xieta; // xi . v
            return s * xixi * std::pow(v2, 0.5 * s - 1.0) +
                   s * (s - 2.0) * xv * xv * std::pow(v2, 0.5 * s - 2.0);
        };
        auto inner = [&](double t) {
            return adaptive_simpson(second_derivative, 0.0, t, 1e-13);
        };
        r.quadrature = adaptive_simpson(inner, 0.0, 1.0, 1e-12);
    }
    if (!std::isfinite(r.quadrature))
        throw std::runtime_error("symbol_remainder: quadrature did not converge");
    return r;
}

GridFunction fourier_series_apply(const Symbol& sigma, double R, int k, const GridFunction& h,
                                  int m_trunc) {
    const Grid& g = h.grid;
    const int n = g.dim;
    if (!(R > 0.0)) throw std::invalid_argument("fourier_series_apply: R must be positive");
    if (m_trunc < 1) throw std::invalid_argument("fourier_series_apply: m_trunc must be >= 1");

    // h must be strictly low-pass: S_k h = h requires all occupied modes in |xi| <= 2^k
    const double band = occupied_band(h);
    if (band > std::exp2(double(k)) * (1.0 + 1e-12))
        throw std::invalid_argument("fourier_series_apply: h carries modes above 2^k");

    // sample sigma on the quadrature lattice of the cube [-R, R]^n
    const int Q = std::max(8 * m_trunc, 512);
    Grid cube(n, 2.0 * R, Q);
    std::vector<cplx> sig(cube.total_points());
    double max_inside = 0.0;
    {
        int idx[3];
        double u[3];
        for (std::size_t flat = 0; flat < sig.size(); ++flat) {
            cube.unflatten(flat, idx);
            for (int a = 0; a < n; ++a) u[a] = cube.coord(idx[a]);
            sig[flat] = sigma(u, n);
            max_inside = std::max(max_inside, std::abs(sig[flat]));
        }
    }

    // compact support check: probe a shell outside the cube
    {
        double u[3];
        int probe_idx[3] = {0, 0, 0};
        const int P = 33;
        bool bad = false;
        std::size_t total = 1;
        for (int a = 0; a < n; ++a) total *= P;
        for (std::size_t flat = 0; flat < total && !bad; ++flat) {
            std::size_t rem = flat;
            double linf = 0.0;
            for (int a = 0; a < n; ++a) {
                probe_idx[a] = int(rem % P);
                rem /= P;
                u[a] = -2.0 * R + 4.0 * R * probe_idx[a] / (P - 1);
                linf = std::max(linf, std::fabs(u[a]));
            }
            if (linf <= R * (1.0 + 1e-12)) continue;
            if (std::abs(sigma(u, n)) > 1e-10 * (max_inside + 1e-300)) bad = true;
        }
        if (bad)
            throw std::invalid_argument(
                "fourier_series_apply: sigma is not compactly supported in the cube");
    }

    // aliased Fourier coefficients via one DFT of the lattice samples:
    // c_m = (-1)^{sum m_a} * DFT_m / Q^n  for the period-2R series basis
    std::vector<cplx> spec = fft::forward(cube, sig);
    const double scale = 1.0 / std::sqrt(double(cube.total_points()));
    const int M = m_trunc;
    const int W = 2 * M + 1;
    std::size_t coeff_total = 1;
    for (int a = 0; a < n; ++a) coeff_total *= std::size_t(W);
    std::vector<cplx> coeff(coeff_total);
    {
        for (std::size_t flat = 0; flat < coeff_total; ++flat) {
            std::size_t rem = flat;
            std::size_t bin = 0;
            int parity = 0;
            for (int a = 0; a < n; ++a) {
                const int m = int(rem % std::size_t(W)) - M;
                rem /= std::size_t(W);
                parity += m;
                const int B = m >= 0 ? m : m + Q;
                bin = bin * std::size_t(Q) + std::size_t(B);
            }
            // note: coefficient lattice is unflattened fastest-axis-first here,
            // while the DFT bins are row-major; both sides use the same order
            cplx c = spec[bin] * scale;
            if (parity & 1) c = -c;
            coeff[flat] = c;
        }
    }

    // multiplier on the physical grid: sum_m c_m exp(i tau m . xi), tau = pi 2^-k / R,
    // restricted to |2^-k xi|_inf <= R; evaluated by per-axis contraction
    const double tau = kPi * std::exp2(double(-k)) / R;
    const int N = g.points_per_axis;
    std::vector<cplx> phase(std::size_t(W) * N);
    for (int m = -M; m <= M; ++m)
        for (int i = 0; i < N; ++i)
            phase[std::size_t(m + M) * N + i] = std::polar(1.0, tau * m * g.freq(i));

    // Multiplier evaluation: direct for n = 1, separable two-pass for n = 2.
    std::vector<cplx> mult(g.total_points(), cplx(0.0, 0.0));
    const double cube_cap = R * (1.0 + 1e-12);
    if (n == 1) {
        for (int i = 0; i < N; ++i) {
            const double u = std::exp2(double(-k)) * g.freq(i);
            if (std::fabs(u) > cube_cap) continue;
            cplx acc = 0.0;
            for (int m = 0; m < W; ++m) acc += coeff[m] * phase[std::size_t(m) * N + i];
            mult[i] = acc;
        }
    } else if (n == 2) {
        // tmp[m0][i1] = sum_{m1} c[m0 fastest? see coeff layout] ...
        // coeff flat = m0 + W*m1 with axis order (a=0 fastest)
        std::vector<cplx> tmp(std::size_t(W) * N);
        for (int m0 = 0; m0 < W; ++m0)
            for (int i1 = 0; i1 < N; ++i1) {
                cplx acc = 0.0;
                for (int m1 = 0; m1 < W; ++m1)
                    acc += coeff[std::size_t(m1) * W + m0] * phase[std::size_t(m1) * N + i1];
                tmp[std::size_t(m0) * N + i1] = acc;
            }
        for (int i0 = 0; i0 < N; ++i0) {
            const double u0 = std::exp2(double(-k)) * g.freq(i0);
            for (int i1 = 0; i1 < N; ++i1) {
                const double u1 = std::exp2(double(-k)) * g.freq(i1);
                if (std::fabs(u0) > cube_cap || std::fabs(u1) > cube_cap) continue;
                cplx acc = 0.0;
                for (int m0 = 0; m0 < W; ++m0)
                    acc += tmp[std::size_t(m0) * N + i1] * phase[std::size_t(m0) * N + i0];
                mult[std::size_t(i0) * N + i1] = acc;
            }
        }
    } else {
        throw std::invalid_argument("fourier_series_apply: dim > 2 not supported");
    }

    std::vector<cplx> spec_h = fft::forward(g, h.samples);
    simd::active().cmul(spec_h.data(), spec_h.data(), mult.data(), spec_h.size());
    return GridFunction(g, fft::inverse(g, spec_h));
}

} // namespace kpw
