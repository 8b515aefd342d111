#include "kpw/norms.hpp"

#include "kpw/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace kpw;

namespace {

GridFunction constant(const Grid& g, cplx v) {
    GridFunction f(g);
    for (auto& s : f.samples) s = v;
    return f;
}

} // namespace

TEST_CASE("weighted norm on constants") {
    const Grid g(1, 2.0, 64);
    const GridFunction one = constant(g, 1.0);
    CHECK(weighted_norm(one, 1.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));

    // int_{-1}^{1} (1+x^2) dx = 8/3 (Riemann error h^2/12 [f'(1)-f'(-1)])
    const Grid g2(1, 2.0, 2048);
    CHECK(std::fabs(weighted_norm(constant(g2, 1.0), 1.0, 2.0) - 8.0 / 3.0) <= 1e-6);

    // p = inf ignores the weight
    GridFunction f(g);
    for (int i = 0; i < 64; ++i) f.samples[i] = cplx(std::sin(3.0 * g.coord(i)), 0.3);
    double maxmod = 0;
    for (auto& v : f.samples) maxmod = std::max(maxmod, std::abs(v));
    CHECK(weighted_norm(f, kInf, 17.0) == doctest::Approx(maxmod));

    CHECK_THROWS_AS(weighted_norm(one, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(weighted_norm(one, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("quasi-norm scaling and weight monotonicity") {
    const Grid g(1, 8.0, 128);
    GridFunction f(g);
    Rng rng(5);
    for (auto& v : f.samples) v = cplx(rng.gaussian(), rng.gaussian());
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
        const double n1 = weighted_norm(f, p, 1.0);
        const double n2 = weighted_norm(cplx(-2.5, 0.0) * f, p, 1.0);
        CHECK(n2 == doctest::Approx(2.5 * n1).epsilon(1e-12));
    }
    CHECK(weighted_norm(f, 1.5, 0.5) <= weighted_norm(f, 1.5, 2.0));
}

TEST_CASE("homogeneous weight variant") {
    const Grid g(1, 2.0, 4096);
    const GridFunction one = constant(g, 1.0);
    // int_{-1}^{1} |x| dx = 1 (cell average handles the origin)
    const double n = weighted_norm(one, 1.0, WeightSpec{WeightKind::Homogeneous, 1.0, 1.0});
    CHECK(std::fabs(n - 1.0) <= 1e-6);
    // scale enters the weight as <scale*x>
    const double p = weighted_norm(one, 1.0, WeightSpec{WeightKind::Polynomial, 2.0, 0.0});
    CHECK(p == doctest::Approx(2.0).epsilon(1e-12)); // scale 0 -> weight 1
}

TEST_CASE("holder exponent arithmetic") {
    const ExponentTuple e1 = holder_exponents(2, 2, 0, 0);
    CHECK(e1.p == doctest::Approx(1.0));
    CHECK(e1.a == doctest::Approx(0.0));

    const ExponentTuple e2 = holder_exponents(2, 2, 2, 4);
    CHECK(e2.p == doctest::Approx(1.0));
    CHECK(e2.a == doctest::Approx(3.0));

    const ExponentTuple e3 = holder_exponents(1, 1, 1.0, 2.0);
    CHECK(e3.p == doctest::Approx(0.5));
    CHECK(e3.a == doctest::Approx(1.5));

    const ExponentTuple e4 = holder_exponents(kInf, 2, 3.0, 1.0);
    CHECK(e4.p == doctest::Approx(2.0));
    CHECK(e4.a == doctest::Approx(1.0));

    CHECK_THROWS_AS(holder_exponents(0.5, 2, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(holder_exponents(2, 2, -1, 0), std::invalid_argument);

    ExponentTuple bad = e1;
    bad.p = 1.5; // breaks 1/p relation
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("mixed norm") {
    const Grid g(2, 2.0, 16);
    const GridFunction one = constant(g, 1.0);
    MixedSpec spec{1, 1.0, 0.0, 1, 1.0, 0.0, WeightKind::Polynomial, 1.0};
    CHECK(mixed_norm(one, spec) == doctest::Approx(4.0).epsilon(1e-13));

    // separable factorization
    const Grid g1(1, 2.0, 16);
    GridFunction u(g1), v(g1);
    Rng rng(9);
    for (auto& s : u.samples) s = cplx(rng.gaussian(), rng.gaussian());
    for (auto& s : v.samples) s = cplx(rng.gaussian(), rng.gaussian());
    GridFunction f(g);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) f.samples[std::size_t(i) * 16 + j] = u.samples[i] * v.samples[j];
    MixedSpec spec2{1, 1.5, 1.0, 1, 2.5, 0.5, WeightKind::Polynomial, 1.0};
    const double lhs = mixed_norm(f, spec2);
    const double rhs = weighted_norm(u, 1.5, 1.0) * weighted_norm(v, 2.5, 0.5);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

    // inner sup variant
    MixedSpec spec3{1, kInf, 0.0, 1, 2.0, 1.0, WeightKind::Polynomial, 1.0};
    CHECK(mixed_norm(f, spec3) > 0.0);

    MixedSpec bad{2, 1.0, 0.0, 1, 1.0, 0.0, WeightKind::Polynomial, 1.0};
    CHECK_THROWS_AS(mixed_norm(f, bad), std::invalid_argument);
}

TEST_CASE("interpolation sequence bound") {
    const InterpBound b1 = interp_sequence_bound(1, 1, 1, 1, kInf, 40);
    CHECK(b1.lhs == doctest::Approx(1.0));
    CHECK(b1.rhs == doctest::Approx(1.0));

    const InterpBound b2 = interp_sequence_bound(1, 1, 1, 1, 1.0, 60);
    CHECK(b2.lhs == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(b2.rhs == doctest::Approx(1.0));

    const InterpBound b3 = interp_sequence_bound(1, 1, 4, 1, kInf, 40);
    CHECK(b3.rhs == doctest::Approx(2.0));

    // lhs/rhs stays bounded as K grows (tails are geometric)
    double prev = 0, prev_step = kInf;
    for (int K : {10, 20, 40, 80}) {
        const InterpBound b = interp_sequence_bound(0.7, 1.3, 2.0, 5.0, 1.0, K);
        const double q = b.lhs / b.rhs;
        CHECK(q < 10.0);
        if (prev > 0) {
            const double step = std::fabs(q - prev);
            CHECK(step <= prev_step);
            prev_step = step;
        }
        prev = q;
    }
    CHECK(prev_step < 1e-8);

    CHECK_THROWS_AS(interp_sequence_bound(-1, 1, 1, 1, 1, 10), std::invalid_argument);
}

TEST_CASE("littlewood-paley operators are uniformly bounded on weighted spaces") {
    // report the empirical constant per (p, a) and require N-doubling stability
    struct Case { double p, a; };
    for (const Case& pc : {Case{1.0, 0.0}, Case{2.0, 1.0}, Case{1.0, 3.0}}) {
        double constant[2] = {0.0, 0.0};
        int which = 0;
        for (int N : {1024, 2048}) {
            const Grid g(1, 32.0, N);
            GridFunction f(g);
            for (int i = 0; i < N; ++i) {
                const double x = g.coord(i);
                f.samples[i] = cplx(bump::phi(std::fabs(x) / 2.0) * std::cos(3.0 * x),
                                    0.5 * bump::phi(std::fabs(x) / 1.5));
            }
            const double base = weighted_norm(f, pc.p, pc.a);
            double worst = 0.0;
            for (int k = 0; k <= 6; ++k) {
                const GridFunction dk = lp_project(f, LpKind::Delta, k);
                const GridFunction sk = lp_project(f, LpKind::S, k);
                worst = std::max(worst, weighted_norm(dk, pc.p, pc.a) / base);
                worst = std::max(worst, weighted_norm(sk, pc.p, pc.a) / base);
            }
            constant[which++] = worst;
        }
        MESSAGE("LP constant p=", pc.p, " a=", pc.a, ": ", constant[0], " (N=1024), ",
                constant[1], " (N=2048)");
        CHECK(std::fabs(constant[1] - constant[0]) <= 0.10 * constant[0]);
        CHECK(constant[1] < 50.0);
    }
}
