#include "kpw/spectral.hpp"

#include "kpw/simd/kernels.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kpw {

namespace {

// symbol samples over the grid's discrete frequency lattice
std::vector<cplx> symbol_table(const Grid& g, const Symbol& m) {
    const std::size_t total = g.total_points();
    std::vector<cplx> table(total);
    int idx[3];
    double xi[3];
    for (std::size_t flat = 0; flat < total; ++flat) {
        g.unflatten(flat, idx);
        for (int a = 0; a < g.dim; ++a) xi[a] = g.freq(idx[a]);
        const cplx v = m(xi, g.dim);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream os;
            os << "symbol evaluation non-finite at frequency (";
            for (int a = 0; a < g.dim; ++a) os << (a ? ", " : "") << xi[a];
            os << ")";
            throw std::runtime_error(os.str());
        }
        table[flat] = v;
    }
    return table;
}

} // namespace

GridFunction apply_symbol(const GridFunction& f, const Symbol& m) {
    const std::vector<cplx> table = symbol_table(f.grid, m);
    std::vector<cplx> spec = fft::forward(f.grid, f.samples);
    simd::active().cmul(spec.data(), spec.data(), table.data(), spec.size());
    return GridFunction(f.grid, fft::inverse(f.grid, spec));
}

GridFunction fractional_op(const GridFunction& f, FractionalKind kind, double s, double delta) {
    switch (kind) {
    case FractionalKind::J:
        return apply_symbol(f, symbols::bessel(s));
    case FractionalKind::JDelta:
        return apply_symbol(f, symbols::bessel_delta(s, delta));
    case FractionalKind::D:
        if (!(s > 0.0))
            throw std::invalid_argument("fractional_op kind D requires s > 0");
        return apply_symbol(f, symbols::riesz(s));
    }
    throw std::invalid_argument("unknown fractional kind");
}

std::vector<GridFunction> gradient(const GridFunction& f) {
    const Grid& g = f.grid;
    std::vector<cplx> spec = fft::forward(g, f.samples);
    std::vector<GridFunction> out;
    out.reserve(g.dim);
    int idx[3];
    for (int axis = 0; axis < g.dim; ++axis) {
        std::vector<cplx> ds(spec.size());
        for (std::size_t flat = 0; flat < spec.size(); ++flat) {
            g.unflatten(flat, idx);
            ds[flat] = cplx(0.0, g.freq(idx[axis])) * spec[flat];
        }
        out.emplace_back(g, fft::inverse(g, ds));
    }
    return out;
}

GridFunction lp_project(const GridFunction& f, LpKind kind, int j) {
    switch (kind) {
    case LpKind::Delta:
        return apply_symbol(f, symbols::bump(BumpKind::Psi, j));
    case LpKind::S:
        return apply_symbol(f, symbols::bump(BumpKind::Phi, j));
    case LpKind::DeltaTilde: {
        Symbol m = symbols::custom([j](const double* xi, int n) {
            double r2 = 0.0;
            for (int a = 0; a < n; ++a) r2 += xi[a] * xi[a];
            const double r = std::sqrt(r2);
            double acc = 0.0;
            for (int k = j - 2; k <= j + 2; ++k) acc += bump::psi(std::ldexp(r, -k));
            return cplx(acc, 0.0);
        });
        return apply_symbol(f, m);
    }
    }
    throw std::invalid_argument("unknown lp kind");
}

double occupied_band(const GridFunction& f, double rel_tol) {
    const Grid& g = f.grid;
    std::vector<cplx> spec = fft::forward(g, f.samples);
    double maxmode = 0.0;
    for (const cplx& c : spec) maxmode = std::max(maxmode, std::abs(c));
    if (maxmode == 0.0) return 0.0;
    const double thresh = rel_tol * maxmode;
    double band = 0.0;
    int idx[3];
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        if (std::abs(spec[flat]) <= thresh) continue;
        g.unflatten(flat, idx);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const double xi = g.freq(idx[a]);
            r2 += xi * xi;
        }
        band = std::max(band, std::sqrt(r2));
    }
    return band;
}

GridFunction spectral_profile(const Grid& g, const Symbol& m) {
    std::vector<cplx> spec = symbol_table(g, m);
    // (-1)^(sum of axis indices) shifts the result by N/2 per axis, exactly
    int idx[3];
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        g.unflatten(flat, idx);
        int parity = 0;
        for (int a = 0; a < g.dim; ++a) parity += idx[a];
        if (parity & 1) spec[flat] = -spec[flat];
    }
    return GridFunction(g, fft::inverse(g, spec));
}

GridFunction modulate(const GridFunction& f, const std::vector<double>& k0) {
    const Grid& g = f.grid;
    if (int(k0.size()) != g.dim) throw std::invalid_argument("modulate: wrong k0 dimension");
    for (double k : k0) {
        const double cycles = k * g.length / (2.0 * kPi);
        if (std::fabs(cycles - std::round(cycles)) > 1e-9)
            throw std::invalid_argument("modulate: k0 is not a grid frequency");
        if (std::fabs(k) >= g.nyquist())
            throw std::invalid_argument("modulate: k0 at or above nyquist");
    }
    GridFunction r(g);
    int idx[3];
    for (std::size_t flat = 0; flat < r.samples.size(); ++flat) {
        g.unflatten(flat, idx);
        double phase = 0.0;
        for (int a = 0; a < g.dim; ++a) phase += k0[a] * g.coord(idx[a]);
        r.samples[flat] = std::polar(1.0, phase) * f.samples[flat];
    }
    return r;
}

} // namespace kpw
