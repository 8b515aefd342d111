#include "kpw/decomposition.hpp"

#include "kpw/norms.hpp"

#include <doctest.h>

#include <cmath>

using namespace kpw;

namespace {

GridFunction random_band_limited(const Grid& g, double band, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> spec(g.total_points(), cplx(0, 0));
    for (int i = 0; i < g.points_per_axis; ++i) {
        if (std::fabs(g.freq(i)) <= band) spec[i] = cplx(rng.gaussian(), rng.gaussian());
    }
    return GridFunction(g, fft::inverse(g, spec));
}

double rel_sup(const GridFunction& a, const GridFunction& b) {
    double d = 0, m = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        d = std::max(d, std::abs(a.samples[i] - b.samples[i]));
        m = std::max(m, std::abs(b.samples[i]));
    }
    return m > 0 ? d / m : d;
}

double sup(const GridFunction& a) {
    double m = 0;
    for (const auto& v : a.samples) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("paraproduct reconstruction and bucket routing") {
    const Grid g(1, 2 * kPi, 256);
    const GridFunction f = random_band_limited(g, 40.0, 11);
    const GridFunction h = random_band_limited(g, 40.0, 12);
    const double s = 1.5;

    const auto p = paraproduct(f, h, s, 6);
    const GridFunction target = fractional_op(f * h, FractionalKind::J, s);
    CHECK(rel_sup(p.I1 + p.I2 + p.I3 + p.I4, target) < 1e-10);

    // low-band-only pair lands entirely in I4
    const GridFunction fl = random_band_limited(g, 0.9, 13);
    const GridFunction hl = random_band_limited(g, 0.9, 14);
    const auto pl = paraproduct(fl, hl, s, 4);
    const double scale = sup(pl.I4);
    CHECK(sup(pl.I1) <= 1e-13 * scale);
    CHECK(sup(pl.I2) <= 1e-13 * scale);
    CHECK(sup(pl.I3) <= 1e-13 * scale);
    CHECK(rel_sup(pl.I4, fractional_op(fl * hl, FractionalKind::J, s)) < 1e-11);

    // f on the 2^5 band, g on the 2^2 band: the pair (5,2) is high-low -> I2
    GridFunction fm(g), gm(g);
    for (int i = 0; i < 256; ++i) {
        fm.samples[i] = std::polar(1.0, 32.0 * g.coord(i));
        gm.samples[i] = std::polar(1.0, 4.0 * g.coord(i));
    }
    const auto pm = paraproduct(fm, gm, s, 6);
    const double pscale = sup(pm.I2);
    CHECK(pscale > 0.0);
    CHECK(sup(pm.I1) <= 1e-13 * pscale);

    // preconditions
    CHECK_THROWS_AS(paraproduct(f, h, s, 3), std::invalid_argument); // band 40 > 2^3
    const GridFunction wide = random_band_limited(g, 80.0, 15);     // above half-nyquist
    CHECK_THROWS_AS(paraproduct(wide, h, s, 7), std::invalid_argument);
}

TEST_CASE("commutator buckets") {
    const Grid g(1, 2 * kPi, 256);
    const double s = 1.5;

    // constants commute with multipliers
    GridFunction c(g);
    for (auto& v : c.samples) v = cplx(3.0, 0.0);
    const GridFunction h = random_band_limited(g, 30.0, 16);
    const auto tc = commutator_terms(c, h, s, 6);
    const double scale = sup(fractional_op(h, FractionalKind::J, s));
    CHECK(sup(tc.II1) <= 1e-10 * scale);
    CHECK(sup(tc.II2) <= 1e-10 * scale);
    CHECK(sup(tc.II3) <= 1e-10 * scale);
    CHECK(sup(tc.II4) <= 1e-10 * scale);

    const GridFunction f = random_band_limited(g, 40.0, 17);
    const GridFunction h2 = random_band_limited(g, 40.0, 18);
    const auto t = commutator_terms(f, h2, s, 6);
    const GridFunction target = fractional_op(f * h2, FractionalKind::J, s) -
                                f * fractional_op(h2, FractionalKind::J, s);
    CHECK(rel_sup(t.II1 + t.II2 + t.II3 + t.II4, target) < 1e-10);

    // g low-band: no high-g pairs, so II1 vanishes
    const GridFunction hlow = random_band_limited(g, 0.9, 19);
    const auto tl = commutator_terms(f, hlow, s, 6);
    CHECK(sup(tl.II1) <= 1e-12 * std::max(sup(tl.II2), sup(tl.II4)));
}

TEST_CASE("commutator lhs orders") {
    const Grid g(1, 2 * kPi, 128);
    const GridFunction f = random_band_limited(g, 20.0, 20);
    const GridFunction h = random_band_limited(g, 20.0, 21);

    GridFunction c(g);
    for (auto& v : c.samples) v = cplx(1.7, 0.0);
    CHECK(sup(commutator_lhs(c, h, 1.5, 1)) < 1e-12 * sup(h));

    // the two orders differ exactly by the correction term
    const double s = 2.6;
    const GridFunction d = commutator_lhs(f, h, s, 1) - commutator_lhs(f, h, s, 2);
    const auto gf = gradient(f);
    const auto gj = gradient(fractional_op(h, FractionalKind::J, s - 2.0));
    GridFunction expect(g);
    for (std::size_t i = 0; i < expect.samples.size(); ++i)
        expect.samples[i] = -s * gf[0].samples[i] * gj[0].samples[i];
    CHECK(rel_sup(d, expect) < 1e-12);

    // s = 2 on shared single modes: remainder symbol is |xi|^2
    GridFunction mode(g);
    for (int i = 0; i < 128; ++i) mode.samples[i] = std::polar(1.0, 3.0 * g.coord(i));
    const GridFunction lhs2 = commutator_lhs(mode, mode, 2.0, 2);
    GridFunction expect2(g);
    for (int i = 0; i < 128; ++i)
        expect2.samples[i] = 9.0 * mode.samples[i] * mode.samples[i];
    CHECK(rel_sup(lhs2, expect2) < 1e-10);

    CHECK_THROWS_AS(commutator_lhs(f, h, s, 3), std::invalid_argument);
}

TEST_CASE("symbol remainder identities") {
    // zero increment
    const auto r0 = symbol_remainder({0.0}, {2.2}, 3.1, 1);
    CHECK(r0.direct == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::fabs(r0.quadrature) < 1e-12);

    // s = 2, order 1: |xi|^2 + 2 xi.eta exactly
    const auto r2 = symbol_remainder({0.7}, {2.3}, 2.0, 1);
    CHECK(r2.direct == doctest::Approx(0.49 + 2 * 0.7 * 2.3).epsilon(1e-14));
    CHECK(r2.quadrature == doctest::Approx(r2.direct).epsilon(1e-12));

    // fractional order 2 example
    const auto r137 = symbol_remainder({0.7}, {2.3}, 1.37, 2);
    CHECK(std::fabs(r137.direct - r137.quadrature) <= 1e-8 * (1.0 + std::fabs(r137.direct)));

    // random sample both orders, n = 1 and n = 2
    Rng rng(22);
    for (int i = 0; i < 40; ++i) {
        const int n = 1 + (i % 2);
        std::vector<double> xi(n), eta(n);
        for (int a = 0; a < n; ++a) {
            xi[a] = rng.uniform(-10.0, 10.0);
            eta[a] = rng.uniform(-10.0, 10.0);
        }
        const double s = rng.uniform(0.1, 4.0);
        for (int order : {1, 2}) {
            const auto r = symbol_remainder(xi, eta, s, order);
            CHECK(std::fabs(r.direct - r.quadrature) <= 1e-8 * (1.0 + std::fabs(r.direct)));
        }
    }

    CHECK_THROWS_AS(symbol_remainder({1.0}, {1.0, 2.0}, 1.0, 1), std::invalid_argument);
}

TEST_CASE("fourier series apply") {
    const Grid g(1, 2 * kPi, 256);
    const int k = 3;
    const GridFunction h = random_band_limited(g, std::exp2(k), 23);

    // sigma = 1 on the band of h reproduces S_k h = h
    Symbol flat = symbols::custom([](const double* u, int) {
        return cplx(bump::phi(std::fabs(u[0]) / 4.0), 0.0);
    });
    const GridFunction rep = fourier_series_apply(flat, 8.0, k, h, 64);
    CHECK(rel_sup(rep, h) < 1e-6);

    // zero input stays zero
    GridFunction zero(g);
    const GridFunction z = fourier_series_apply(flat, 8.0, k, zero, 16);
    CHECK(sup(z) == 0.0);

    // error decreases monotonically (within 2x jitter) as M doubles
    Symbol sig1 = symbols::custom([](const double* u, int) {
        const double r = std::fabs(u[0]);
        return cplx(std::pow(1.0 + r * r, 0.75) * bump::phi(r / 8.0), 0.0);
    });
    Symbol direct = symbols::custom([k](const double* xi, int) {
        const double r = std::fabs(xi[0]) / 8.0; // 2^-3 xi
        return cplx(std::pow(1.0 + r * r, 0.75) * bump::phi(r / 8.0), 0.0);
    });
    const GridFunction target = apply_symbol(h, direct);
    double prev = kInf;
    for (int M : {8, 16, 32, 64}) {
        const GridFunction approx = fourier_series_apply(sig1, 16.0, k, h, M);
        const double err = rel_sup(approx, target);
        CHECK(err <= 2.0 * prev);
        prev = err;
    }
    CHECK(prev < 2e-6); // the series tail sits at ~1e-6 here; the acceptance instance pins 1e-6

    // support violation
    Symbol unbounded = symbols::custom([](const double* u, int) {
        return cplx(1.0 / (1.0 + u[0] * u[0]), 0.0);
    });
    CHECK_THROWS_AS(fourier_series_apply(unbounded, 8.0, k, h, 16), std::invalid_argument);

    // h with modes above 2^k
    const GridFunction wide = random_band_limited(g, 20.0, 24);
    CHECK_THROWS_AS(fourier_series_apply(flat, 8.0, k, wide, 16), std::invalid_argument);
}

TEST_CASE("low-high bucket summand stays inside the support arithmetic bound") {
    // pre-J^s summand of bucket k for I1: support within 2^{k+1} + 2^{k-2}
    const Grid g(1, 2 * kPi, 256);
    const GridFunction f = random_band_limited(g, 40.0, 25);
    const GridFunction h = random_band_limited(g, 40.0, 26);
    const int k = 5;
    GridFunction low(g);
    low = lp_project(f, LpKind::S, 0);
    for (int j = 1; j <= k - 3; ++j) low = low + lp_project(f, LpKind::Delta, j);
    const GridFunction summand = low * lp_project(h, LpKind::Delta, k);
    const auto spec = fft::forward(g, summand.samples);
    double inside = 0, outside = 0;
    const double cap = std::exp2(k + 1) + std::exp2(k - 2);
    for (int i = 0; i < g.points_per_axis; ++i) {
        const double xi = std::fabs(g.freq(i));
        const double m = std::abs(spec[i]);
        if (xi <= cap)
            inside = std::max(inside, m);
        else
            outside = std::max(outside, m);
    }
    CHECK(outside <= 1e-13 * inside);
}
