#include "kpw/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kpw {

QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, int max_level) {
    if (!(b > a)) return {0.0, 0.0, true};
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    constexpr double tmax = 3.8; // tanh(pi/2 sinh(3.8)) is 1 to double precision

    auto node = [&](double t, double& x, double& w) {
        const double sh = std::sinh(t);
        const double u = 0.5 * 3.14159265358979323846 * sh;
        const double ch = std::cosh(u);
        x = c + r * std::tanh(u);
        w = r * 0.5 * 3.14159265358979323846 * std::cosh(t) / (ch * ch);
    };

    double h = 1.0;
    double x, w;
    node(0.0, x, w);
    double sum = f(x) * w;
    for (double t = 1.0; t <= tmax; t += 1.0) {
        node(t, x, w);
        sum += f(x) * w;
        node(-t, x, w);
        sum += f(x) * w;
    }
    double prev = sum * h;
    QuadResult res;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        // add the odd-index nodes of the refined mesh
        double add = 0.0;
        for (double t = h; t <= tmax; t += 2.0 * h) {
            node(t, x, w);
            add += f(x) * w;
            node(-t, x, w);
            add += f(x) * w;
        }
        sum += add;
        const double cur = sum * h;
        res.value = cur;
        res.error_estimate = std::fabs(cur - prev);
        if (level >= 3 && res.error_estimate <= rel_tol * std::fabs(cur)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    res.converged = res.error_estimate <= 10.0 * rel_tol * std::fabs(res.value);
    return res;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm, double whole, double tol, int depth,
                    int max_depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= max_depth) throw std::runtime_error("adaptive_simpson: max depth reached");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max(1.0, std::fabs(whole));
    return simpson_step(f, a, fa, b, fb, m, fm, whole, tol * scale, 0, max_depth);
}

} // namespace kpw
