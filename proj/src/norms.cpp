#include "kpw/norms.hpp"

#include "kpw/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace kpw {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1] (positive half; symmetric)
constexpr int kGL = 8;
constexpr double kGLx[kGL] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                              0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                              0.9445750230732326, 0.9894009349916499};
constexpr double kGLw[kGL] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                              0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                              0.0622535239386479, 0.0271524594117541};

// average of |x|^a over the cell [-h/2, h/2]^n (|x|^a is bounded for a >= 0)
double homogeneous_cell_average(double a, double h, int n) {
    if (a == 0.0) return 1.0;
    if (n == 1) return std::pow(0.5 * h, a) / (a + 1.0);
    double acc = 0.0;
    double node[3], wt;
    const double half = 0.5 * h;
    auto radius_pow = [&](int dim) {
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) r2 += node[d] * node[d];
        return std::pow(r2, 0.5 * a);
    };
    if (n == 2) {
        for (int i = 0; i < 2 * kGL; ++i)
            for (int j = 0; j < 2 * kGL; ++j) {
                node[0] = half * (i < kGL ? -kGLx[i] : kGLx[i - kGL]);
                node[1] = half * (j < kGL ? -kGLx[j] : kGLx[j - kGL]);
                wt = kGLw[i < kGL ? i : i - kGL] * kGLw[j < kGL ? j : j - kGL];
                acc += wt * radius_pow(2);
            }
        return acc / 4.0;
    }
    for (int i = 0; i < 2 * kGL; ++i)
        for (int j = 0; j < 2 * kGL; ++j)
            for (int k = 0; k < 2 * kGL; ++k) {
                node[0] = half * (i < kGL ? -kGLx[i] : kGLx[i - kGL]);
                node[1] = half * (j < kGL ? -kGLx[j] : kGLx[j - kGL]);
                node[2] = half * (k < kGL ? -kGLx[k] : kGLx[k - kGL]);
                wt = kGLw[i < kGL ? i : i - kGL] * kGLw[j < kGL ? j : j - kGL] *
                     kGLw[k < kGL ? k : k - kGL];
                acc += wt * radius_pow(3);
            }
    return acc / 8.0;
}

using WeightKey = std::tuple<int, double, int, int, double, double>;

std::mutex g_weight_mu;
std::map<WeightKey, std::shared_ptr<const std::vector<double>>>& weight_cache() {
    static std::map<WeightKey, std::shared_ptr<const std::vector<double>>> c;
    return c;
}

std::shared_ptr<const std::vector<double>> weight_table(const Grid& g, const WeightSpec& w) {
    WeightKey key{g.dim, g.length, g.points_per_axis, int(w.kind), w.a, w.scale};
    {
        std::lock_guard<std::mutex> lk(g_weight_mu);
        auto it = weight_cache().find(key);
        if (it != weight_cache().end()) return it->second;
    }
    auto table = std::make_shared<std::vector<double>>(g.total_points());
    int idx[3];
    for (std::size_t flat = 0; flat < table->size(); ++flat) {
        g.unflatten(flat, idx);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const double x = w.scale * g.coord(idx[a]);
            r2 += x * x;
        }
        if (w.kind == WeightKind::Polynomial) {
            (*table)[flat] = std::pow(1.0 + r2, 0.5 * w.a);
        } else {
            (*table)[flat] = r2 == 0.0
                                 ? homogeneous_cell_average(w.a, w.scale * g.spacing(), g.dim)
                                 : std::pow(r2, 0.5 * w.a);
        }
    }
    std::lock_guard<std::mutex> lk(g_weight_mu);
    auto [it, inserted] = weight_cache().emplace(key, std::move(table));
    (void)inserted;
    return it->second;
}

double norm_with_table(const cplx* z, const double* w, std::size_t n, double p, double measure) {
    const auto& k = simd::active();
    if (p == 2.0) return std::sqrt(k.weighted_abs2_sum(z, w, n) * measure);
    if (p == 1.0) return k.weighted_abs_sum(z, w, n) * measure;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m2 = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
        if (m2 == 0.0) continue;
        acc += (w ? w[i] : 1.0) * std::pow(m2, 0.5 * p);
    }
    return std::pow(acc * measure, 1.0 / p);
}

} // namespace

double weighted_norm(const GridFunction& f, double p, double a) {
    return weighted_norm(f, p, WeightSpec{WeightKind::Polynomial, a, 1.0});
}

double weighted_norm(const GridFunction& f, double p, const WeightSpec& w) {
    if (!(p > 0.0)) throw std::invalid_argument("weighted_norm requires p > 0");
    if (w.a < 0.0) throw std::invalid_argument("weighted_norm requires a >= 0");
    if (p == kInf) return simd::active().max_abs(f.samples.data(), f.samples.size());
    const bool unit = (w.a == 0.0);
    std::shared_ptr<const std::vector<double>> table;
    if (!unit) table = weight_table(f.grid, w);
    return norm_with_table(f.samples.data(), unit ? nullptr : table->data(), f.samples.size(),
                           p, f.grid.cell_volume());
}

void ExponentTuple::validate() const {
    auto inv = [](double v) { return v == kInf ? 0.0 : 1.0 / v; };
    if (!(p >= 0.5) || !(p1 >= 1.0) || !(p2 >= 1.0))
        throw std::invalid_argument("exponents out of range: need p >= 1/2, p1,p2 >= 1");
    if (a < 0 || a1 < 0 || a2 < 0) throw std::invalid_argument("weights must be nonnegative");
    if (std::fabs(inv(p) - inv(p1) - inv(p2)) > 1e-12)
        throw std::invalid_argument("exponent relation 1/p = 1/p1 + 1/p2 violated");
    const double lhs = p == kInf ? 0.0 : a / p;
    const double rhs = (p1 == kInf ? 0.0 : a1 / p1) + (p2 == kInf ? 0.0 : a2 / p2);
    if (std::fabs(lhs - rhs) > 1e-12)
        throw std::invalid_argument("weight relation a/p = a1/p1 + a2/p2 violated");
}

ExponentTuple holder_exponents(double p1, double p2, double a1, double a2) {
    if (!(p1 >= 1.0) || !(p2 >= 1.0)) throw std::invalid_argument("need p1, p2 in [1, inf]");
    if (a1 < 0 || a2 < 0) throw std::invalid_argument("need a1, a2 >= 0");
    auto inv = [](double v) { return v == kInf ? 0.0 : 1.0 / v; };
    const double ip = inv(p1) + inv(p2);
    ExponentTuple e;
    e.p1 = p1;
    e.p2 = p2;
    e.a1 = a1;
    e.a2 = a2;
    e.p = ip == 0.0 ? kInf : 1.0 / ip;
    // for p = inf the weight relation is vacuous (the sup norm ignores weights)
    e.a = e.p == kInf ? 0.0 : e.p * ((p1 == kInf ? 0.0 : a1 / p1) + (p2 == kInf ? 0.0 : a2 / p2));
    e.validate();
    return e;
}

double mixed_norm(const GridFunction& f, const MixedSpec& spec) {
    const Grid& g = f.grid;
    if (spec.dot_dim < 1 || spec.ddot_dim < 1 || spec.dot_dim + spec.ddot_dim != g.dim)
        throw std::invalid_argument("mixed_norm: inner+outer dims must equal grid dim");
    if (!(spec.p_dot > 0) || !(spec.p_ddot > 0))
        throw std::invalid_argument("mixed_norm requires positive exponents");

    const int N = g.points_per_axis;
    std::size_t inner_total = 1, outer_total = 1;
    for (int a = 0; a < spec.dot_dim; ++a) inner_total *= std::size_t(N);
    for (int a = 0; a < spec.ddot_dim; ++a) outer_total *= std::size_t(N);

    const double h = g.spacing();
    double inner_measure = 1.0, outer_measure = 1.0;
    for (int a = 0; a < spec.dot_dim; ++a) inner_measure *= h;
    for (int a = 0; a < spec.ddot_dim; ++a) outer_measure *= h;

    auto coord_radius2 = [&](std::size_t flat, int dims) {
        double r2 = 0.0;
        for (int a = dims - 1; a >= 0; --a) {
            const int i = int(flat % std::size_t(N));
            flat /= std::size_t(N);
            const double x = spec.scale * g.coord(i);
            r2 += x * x;
        }
        return r2;
    };
    auto weight_at = [&](double r2, double a, double cell_h, int dims) {
        if (a == 0.0) return 1.0;
        if (spec.kind == WeightKind::Polynomial) return std::pow(1.0 + r2, 0.5 * a);
        return r2 == 0.0 ? homogeneous_cell_average(a, cell_h, dims) : std::pow(r2, 0.5 * a);
    };

    // dot block = leading axes (slowest); samples for one outer point are strided
    std::vector<double> slice(outer_total, 0.0);
    const bool inner_sup = spec.p_dot == kInf;
    for (std::size_t o = 0; o < outer_total; ++o) {
        double acc = 0.0;
        for (std::size_t d = 0; d < inner_total; ++d) {
            const cplx v = f.samples[d * outer_total + o];
            const double m = std::abs(v);
            if (inner_sup) {
                acc = std::max(acc, m);
            } else if (m > 0.0) {
                acc += std::pow(m, spec.p_dot) *
                       weight_at(coord_radius2(d, spec.dot_dim), spec.a_dot,
                                 spec.scale * h, spec.dot_dim);
            }
        }
        slice[o] = inner_sup ? acc : std::pow(acc * inner_measure, 1.0 / spec.p_dot);
    }

    if (spec.p_ddot == kInf) {
        double m = 0.0;
        for (double v : slice) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (std::size_t o = 0; o < outer_total; ++o) {
        if (slice[o] == 0.0) continue;
        acc += std::pow(slice[o], spec.p_ddot) *
               weight_at(coord_radius2(o, spec.ddot_dim), spec.a_ddot, spec.scale * h,
                         spec.ddot_dim);
    }
    return std::pow(acc * outer_measure, 1.0 / spec.p_ddot);
}

InterpBound interp_sequence_bound(double a, double b, double A, double B, double u, int K) {
    if (!(a > 0) || !(b > 0) || !(A > 0) || !(B > 0) || !(u > 0) || K < 1)
        throw std::invalid_argument("interp_sequence_bound: all parameters must be positive");
    InterpBound r;
    r.rhs = std::pow(A, b / (a + b)) * std::pow(B, a / (a + b));
    if (u == kInf) {
        double m = 0.0;
        for (int k = -K; k <= K; ++k)
            m = std::max(m, std::min(std::exp2(k * a) * A, std::exp2(-k * b) * B));
        r.lhs = m;
    } else {
        double acc = 0.0;
        for (int k = -K; k <= K; ++k)
            acc += std::pow(std::min(std::exp2(k * a) * A, std::exp2(-k * b) * B), u);
        r.lhs = std::pow(acc, 1.0 / u);
    }
    return r;
}

GridFunction discrete_convolution(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("grid mismatch");
    const Grid& gr = f.grid;
    const int N = gr.points_per_axis;
    const std::size_t total = gr.total_points();
    if (total * total > std::size_t(1) << 33)
        throw std::invalid_argument("discrete_convolution: grid too large for direct summation");
    GridFunction out(gr);
    const double measure = gr.cell_volume();
    int idx_i[3], idx_j[3];
    for (std::size_t i = 0; i < total; ++i) {
        gr.unflatten(i, idx_i);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < total; ++j) {
            gr.unflatten(j, idx_j);
            std::size_t dflat = 0;
            for (int a = 0; a < gr.dim; ++a) {
                // sample of g at the coordinate x_i - x_j: coordinates start at
                // -L/2, so the index of displacement d is d + N/2 (mod N)
                int d = idx_i[a] - idx_j[a] + N / 2;
                d %= N;
                if (d < 0) d += N;
                dflat = dflat * std::size_t(N) + std::size_t(d);
            }
            acc += f.samples[j] * g.samples[dflat];
        }
        out.samples[i] = acc * measure;
    }
    return out;
}

} // namespace kpw
