#include "kpw/kernels.hpp"

#include "kpw/quadrature.hpp"
#include "kpw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace kpw {

namespace {

void check_kernel_args(double y_abs, double s, double delta, int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("kernel: dim must be 1, 2 or 3");
    if (!(y_abs > 0.0)) throw std::invalid_argument("kernel: y_abs must be positive");
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("kernel: delta in (0,1]");
    if (s >= 0.0)
        throw std::invalid_argument(
            "kernel: s >= 0 kernel evaluation not supported directly (needs analytic "
            "continuation; use the spectral route)");
    if (s < -double(n))
        throw std::invalid_argument("kernel: s < -n has no delta-uniform kernel bound");
}

// integral in u = log t; both tails die doubly exponentially
double kernel_integrand(double u, double y2, double d2, double alpha) {
    return std::exp(-y2 * std::exp(-u) - d2 * std::exp(u) - alpha * u);
}

} // namespace

KernelEval kernel_ks_delta(double y_abs, double s, double delta, int n) {
    check_kernel_args(y_abs, s, delta, n);
    const double y2 = y_abs * y_abs;
    const double d2 = delta * delta;
    const double alpha = 0.5 * (s + n);

    // split at the two exponential cutoffs t = y^2 and t = 1/delta^2
    double b1 = std::log(y2);
    double b2 = std::log(1.0 / d2);
    if (b1 > b2) std::swap(b1, b2);
    const double lo = b1 - 8.0;
    const double hi = b2 + 8.0;

    auto f = [&](double u) { return kernel_integrand(u, y2, d2, alpha); };
    KernelEval out;
    out.radius = y_abs;
    out.s = s;
    out.delta = delta;
    out.dim = n;
    const double pieces[4] = {lo, b1, b2, hi};
    for (int i = 0; i < 3; ++i) {
        if (pieces[i + 1] <= pieces[i]) continue;
        QuadResult q = tanh_sinh(f, pieces[i], pieces[i + 1], 1e-9);
        out.value += q.value;
        out.quad_error_estimate += q.error_estimate;
    }
    if (!(out.value >= 0.0)) throw std::runtime_error("kernel: negative quadrature value");
    if (out.value > 0.0 && out.quad_error_estimate > 1e-8 * out.value)
        throw std::runtime_error("kernel: quadrature failed to reach 1e-8 relative accuracy");
    return out;
}

namespace {

std::mutex g_env_mu;
std::map<std::pair<double, int>, double>& envelope_constants() {
    static std::map<std::pair<double, int>, double> c;
    return c;
}

} // namespace

EnvelopeCheck kernel_bound_check(double y_abs, double s, double delta, int n) {
    if (!(y_abs >= 1.0)) throw std::invalid_argument("kernel_bound_check: needs y_abs >= 1");
    check_kernel_args(y_abs, s, delta, n);
    const double rate = 4.0 / (n + s + 2.0);
    double C;
    {
        std::lock_guard<std::mutex> lk(g_env_mu);
        auto it = envelope_constants().find({s, n});
        if (it != envelope_constants().end()) {
            C = it->second;
        } else {
            const double k1 = kernel_ks_delta(1.0, s, 1.0, n).value;
            C = k1 * std::exp(rate); // envelope equals the kernel at the anchor
            envelope_constants().emplace(std::make_pair(s, n), C);
        }
    }
    EnvelopeCheck r;
    r.value = kernel_ks_delta(y_abs, s, delta, n).value;
    r.envelope = C * std::pow(y_abs, -(n + s)) * std::exp(-rate * delta * y_abs);
    r.pass = r.value <= 10.0 * r.envelope;
    return r;
}

DecayFit tail_exponent_fit(const std::vector<double>& radii, const std::vector<double>& values) {
    if (radii.size() < 4) throw std::invalid_argument("tail fit: need at least 4 samples");
    if (radii.size() != values.size()) throw std::invalid_argument("tail fit: size mismatch");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::invalid_argument("tail fit: values must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("tail fit: radii must be strictly increasing");
    }
    const std::size_t m = radii.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = std::log(radii[i]);
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    DecayFit fit;
    fit.radii = radii;
    fit.values = values;
    const double denom = m * sxx - sx * sx;
    fit.fitted_exponent = (m * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.fitted_exponent * sx) / m;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = std::log(values[i]) - (intercept + fit.fitted_exponent * std::log(radii[i]));
        rss += r * r;
    }
    fit.fit_residual = std::sqrt(rss / m);
    return fit;
}

DecayFit jsdelta_tail_profile(const GridFunction& f, double s, double delta,
                              const std::vector<double>& radii) {
    if (!(s > 0.0)) throw std::invalid_argument("jsdelta_tail_profile: needs s > 0");
    if (radii.size() < 4) throw std::invalid_argument("jsdelta_tail_profile: need >= 4 radii");
    const Grid& g = f.grid;
    {
        double maxmod = 0.0;
        for (const cplx& v : f.samples) maxmod = std::max(maxmod, std::abs(v));
        if (maxmod == 0.0) throw std::invalid_argument("jsdelta_tail_profile: f is zero");
        for (const cplx& v : f.samples)
            if (v.real() < -1e-8 * maxmod || std::fabs(v.imag()) > 1e-8 * maxmod)
                throw std::invalid_argument("jsdelta_tail_profile: f must be nonnegative");
    }
    for (double r : radii)
        if (!(r > 0.0) || r * std::exp2(0.25) >= 0.5 * g.length)
            throw std::invalid_argument("jsdelta_tail_profile: radius shell outside the box");

    const GridFunction u = fractional_op(f, FractionalKind::JDelta, s, delta);
    std::vector<double> vals(radii.size(), 0.0);
    int idx[3];
    for (std::size_t flat = 0; flat < u.samples.size(); ++flat) {
        g.unflatten(flat, idx);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const double x = g.coord(idx[a]);
            r2 += x * x;
        }
        const double r = std::sqrt(r2);
        const double m = std::abs(u.samples[flat]);
        for (std::size_t j = 0; j < radii.size(); ++j) {
            if (r >= radii[j] * std::exp2(-0.25) && r <= radii[j] * std::exp2(0.25))
                vals[j] = std::max(vals[j], m);
        }
    }
    for (std::size_t j = 0; j < vals.size(); ++j)
        if (vals[j] == 0.0)
            throw std::invalid_argument("jsdelta_tail_profile: empty shell at requested radius");
    return tail_exponent_fit(radii, vals);
}

GridFunction kernel_convolution_oracle(const GridFunction& f, double s, double delta) {
    const Grid& g = f.grid;
    check_kernel_args(1.0, s, delta, g.dim); // validates s, delta, dim
    const int N = g.points_per_axis;
    const std::size_t total = g.total_points();
    if (total * total > (std::size_t(1) << 33))
        throw std::invalid_argument("kernel_convolution_oracle: grid too large");

    // The literal integral (evaluated by kernel_ks_delta) is the kernel of
    // ((2 delta)^2 - Laplace)^{s/2} scaled by Gamma(-s/2) (4pi)^{n/2} 4^{-(s+n)/2}:
    // substituting t -> 4t in the integral gives the heat-kernel form with the
    // exact exp(-|y|^2/(4t)) exponent. The kernel of (delta^2 - Laplace)^{s/2}
    // is therefore 2^s pi^{-n/2} / Gamma(-s/2) times the integral at delta/2.
    // (Cross-checked at s = -1, n = 1: this reduces to K_0(delta |y|)/pi.)
    const double norm_c =
        std::pow(2.0, s) * std::pow(kPi, -0.5 * g.dim) / std::tgamma(-0.5 * s);
    const double dhalf = 0.5 * delta;
    auto kernel_at = [&](double r) {
        return norm_c * kernel_ks_delta(r, s, dhalf, g.dim).value;
    };

    // kernel samples indexed by displacement (min-image radius)
    std::vector<double> ker(total);
    const double h = g.spacing();
    int idx[3];
    for (std::size_t flat = 0; flat < total; ++flat) {
        g.unflatten(flat, idx);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const int k = idx[a] < N / 2 ? idx[a] : idx[a] - N;
            r2 += (k * h) * (k * h);
        }
        if (r2 == 0.0) {
            ker[flat] = 0.0; // filled below
        } else {
            ker[flat] = kernel_at(std::sqrt(r2));
        }
    }

    // singular cell: cell average of the kernel over [-h/2, h/2]^n
    if (g.dim == 1) {
        // (2/h) int_0^{h/2} K = (2/h) int_{-inf}^{log(h/2)} K(e^u) e^u du
        const double y2cap = 0.25 * h * h;
        auto f1 = [&](double u) {
            const double y = std::exp(u);
            if (y * y >= y2cap) return 0.0;
            return kernel_at(y) * y;
        };
        const double hi = std::log(0.5 * h);
        QuadResult q = tanh_sinh(f1, hi - 40.0, hi, 1e-9, 14);
        ker[0] = 2.0 / h * q.value;
    } else {
        // polar quadrature: the radial integral int_0^R G(r) r^{n-1} dr is
        // handled on a log scale (the integrand decays like e^{-s v} there),
        // the angular factor is smooth up to the cube-boundary kinks
        const double half = 0.5 * h;
        auto radial = [&](double rmax) {
            auto fr = [&](double v) {
                const double r = std::exp(v);
                if (r >= rmax) return 0.0;
                return kernel_at(r) * std::pow(r, double(g.dim));
            };
            const double hiv = std::log(rmax);
            return tanh_sinh(fr, hiv - 40.0, hiv, 1e-8, 10).value;
        };
        double cell = 1.0;
        for (int a = 0; a < g.dim; ++a) cell *= h;
        if (g.dim == 2) {
            // 8-fold symmetry: theta in [0, pi/4], R(theta) = (h/2)/cos(theta)
            const int q = 16;
            double acc = 0.0;
            for (int i = 0; i < q; ++i) {
                const double th = (i + 0.5) * (kPi / 4.0) / q;
                acc += radial(half / std::cos(th)) * (kPi / 4.0) / q;
            }
            ker[0] = 8.0 * acc / cell;
        } else {
            // full sphere: GL-like midpoint in cos(theta), trapezoid in phi
            const int qt = 24, qp = 48;
            double acc = 0.0;
            for (int i = 0; i < qt; ++i) {
                const double ct = -1.0 + (i + 0.5) * 2.0 / qt;
                const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                for (int j = 0; j < qp; ++j) {
                    const double ph = (j + 0.5) * 2.0 * kPi / qp;
                    const double dx = std::fabs(st * std::cos(ph));
                    const double dy = std::fabs(st * std::sin(ph));
                    const double dz = std::fabs(ct);
                    const double rmax = half / std::max({dx, dy, dz});
                    acc += radial(rmax) * (2.0 / qt) * (2.0 * kPi / qp);
                }
            }
            ker[0] = acc / cell;
        }
    }

    GridFunction out(g);
    const double measure = g.cell_volume();
    int idx_i[3], idx_j[3];
    for (std::size_t i = 0; i < total; ++i) {
        g.unflatten(i, idx_i);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < total; ++j) {
            g.unflatten(j, idx_j);
            std::size_t dflat = 0;
            for (int a = 0; a < g.dim; ++a) {
                int d = idx_i[a] - idx_j[a];
                if (d < 0) d += N;
                dflat = dflat * std::size_t(N) + std::size_t(d);
            }
            acc += f.samples[j] * ker[dflat];
        }
        out.samples[i] = acc * measure;
    }
    return out;
}

} // namespace kpw
