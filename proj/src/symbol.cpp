#include "kpw/symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace kpw::symbols {

namespace {
inline double abs2(const double* xi, int n) {
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += xi[a] * xi[a];
    return r2;
}
} // namespace

Symbol one() {
    Symbol m;
    m.descriptor = {Symbol::Kind::Custom, 0, 0, BumpKind::Phi, 0};
    m.eval = [](const double*, int) { return cplx(1.0, 0.0); };
    return m;
}

Symbol bessel(double s) {
    Symbol m;
    m.descriptor = {Symbol::Kind::Bessel, s, 1.0, BumpKind::Phi, 0};
    m.eval = [s](const double* xi, int n) {
        return cplx(std::pow(1.0 + abs2(xi, n), 0.5 * s), 0.0);
    };
    return m;
}

Symbol bessel_delta(double s, double delta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("bessel_delta requires delta in (0,1]");
    Symbol m;
    m.descriptor = {Symbol::Kind::BesselDelta, s, delta, BumpKind::Phi, 0};
    m.eval = [s, delta](const double* xi, int n) {
        return cplx(std::pow(delta * delta + abs2(xi, n), 0.5 * s), 0.0);
    };
    return m;
}

Symbol riesz(double s) {
    if (!(s > 0.0))
        throw std::invalid_argument("riesz symbol requires s > 0 (|xi|^s is not locally "
                                    "integrable for s <= 0)");
    Symbol m;
    m.descriptor = {Symbol::Kind::Riesz, s, 0.0, BumpKind::Phi, 0};
    m.eval = [s](const double* xi, int n) {
        const double r2 = abs2(xi, n);
        return cplx(r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * s), 0.0);
    };
    return m;
}

Symbol bump(BumpKind kind, int j) {
    Symbol m;
    m.descriptor = {Symbol::Kind::Bump, 0, 0, kind, j};
    const double scale = std::ldexp(1.0, -j); // 2^-j
    m.eval = [kind, scale](const double* xi, int n) {
        double r2 = abs2(xi, n);
        const double r = scale * std::sqrt(r2);
        return cplx(kind == BumpKind::Phi ? bump::phi(r) : bump::psi(r), 0.0);
    };
    return m;
}

Symbol custom(std::function<cplx(const double*, int)> f) {
    Symbol m;
    m.descriptor = {Symbol::Kind::Custom, 0, 0, BumpKind::Phi, 0};
    m.eval = std::move(f);
    return m;
}

} // namespace kpw::symbols
