#include "kpw/bump.hpp"

#include <cmath>

namespace kpw {

namespace bump {

namespace {
inline double q(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
} // namespace

double phi(double r) {
    r = std::fabs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = q(2.0 - r);
    return a / (a + q(r - 1.0));
}

double psi(double r) { return phi(r) - phi(2.0 * r); }

} // namespace bump

double evaluate_bump(BumpKind kind, const double* xi, int dim) {
    double r2 = 0.0;
    for (int a = 0; a < dim; ++a) r2 += xi[a] * xi[a];
    const double r = std::sqrt(r2);
    return kind == BumpKind::Phi ? bump::phi(r) : bump::psi(r);
}

} // namespace kpw
