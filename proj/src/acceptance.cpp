#include "kpw/acceptance.hpp"

#include "kpw/harness.hpp"
#include "kpw/runner.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

namespace kpw::acceptance {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void add_metric(CriterionResult& c, const std::string& name, double value, double threshold,
                bool pass) {
    c.metrics.push_back({name, value, threshold, pass});
    if (!pass) c.pass = false;
}

void add_upper(CriterionResult& c, const std::string& name, double value, double threshold) {
    add_metric(c, name, value, threshold, value <= threshold);
}

GridFunction random_band_limited(const Grid& g, double band, Rng& rng) {
    std::vector<cplx> spec(g.total_points(), cplx(0, 0));
    int idx[3];
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        g.unflatten(flat, idx);
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const double xi = g.freq(idx[a]);
            r2 += xi * xi;
        }
        if (r2 <= band * band) spec[flat] = cplx(rng.gaussian(), rng.gaussian());
    }
    return GridFunction(g, fft::inverse(g, spec));
}

double rel_sup_diff(const GridFunction& a, const GridFunction& b) {
    double d = 0.0, m = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        d = std::max(d, std::abs(a.samples[i] - b.samples[i]));
        m = std::max(m, std::abs(b.samples[i]));
    }
    return m > 0.0 ? d / m : d;
}

// ---- C1: exact paraproduct / commutator reconstruction -------------------

CriterionResult c1() {
    CriterionResult c{"C1", "paraproduct and commutator reconstruction (rel <= 1e-10)", true, {}, {}};
    const Grid g(1, 2.0 * kPi, 256);
    const double svals[4] = {0.5, 1.5, 2.0, 3.7};
    double worst_para = 0.0, worst_comm = 0.0;
    for (int si = 0; si < 4; ++si) {
        const double s = svals[si];
        for (int trial = 0; trial < 20; ++trial) {
            Rng rng(1000 + 100 * si + trial);
            GridFunction f = random_band_limited(g, 40.0, rng);
            GridFunction gg = random_band_limited(g, 40.0, rng);
            const auto p = paraproduct(f, gg, s, 6);
            const GridFunction target = fractional_op(f * gg, FractionalKind::J, s);
            worst_para = std::max(worst_para,
                                  rel_sup_diff(p.I1 + p.I2 + p.I3 + p.I4, target));
            const auto t = commutator_terms(f, gg, s, 6);
            const GridFunction ctarget =
                target - f * fractional_op(gg, FractionalKind::J, s);
            worst_comm = std::max(worst_comm,
                                  rel_sup_diff(t.II1 + t.II2 + t.II3 + t.II4, ctarget));
        }
    }
    add_upper(c, "paraproduct_reconstruction_rel", worst_para, 1e-10);
    add_upper(c, "commutator_reconstruction_rel", worst_comm, 1e-10);
    return c;
}

// ---- C2: first/second order symbol identities -----------------------------

CriterionResult c2() {
    CriterionResult c{"C2", "symbol increment identities, direct vs quadrature", true, {}, {}};
    Rng rng(42);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = (i % 2) + 1;
        std::vector<double> xi(n), eta(n);
        do {
            for (int a = 0; a < n; ++a) xi[a] = rng.uniform(-16.0, 16.0);
        } while (std::sqrt(std::inner_product(xi.begin(), xi.end(), xi.begin(), 0.0)) > 16.0);
        do {
            for (int a = 0; a < n; ++a) eta[a] = rng.uniform(-16.0, 16.0);
        } while (std::sqrt(std::inner_product(eta.begin(), eta.end(), eta.begin(), 0.0)) > 16.0);
        const double s = rng.uniform(0.1, 4.0);
        for (int order : {1, 2}) {
            const auto r = symbol_remainder(xi, eta, s, order);
            const double err = std::fabs(r.direct - r.quadrature) / (1.0 + std::fabs(r.direct));
            worst = std::max(worst, err);
        }
    }
    add_upper(c, "max_normalized_error", worst, 1e-8);
    return c;
}

// ---- C3: Fourier-series multiplier representation -------------------------

double series_error(const std::function<double(double)>& sigma_radial, double R, int k,
                    double band, const Grid& g, int m_trunc, std::uint64_t seed) {
    Rng rng(seed);
    GridFunction h = random_band_limited(g, band, rng);
    Symbol sig = symbols::custom([sigma_radial](const double* u, int n) {
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) r2 += u[a] * u[a];
        return cplx(sigma_radial(std::sqrt(r2)), 0.0);
    });
    const GridFunction approx = fourier_series_apply(sig, R, k, h, m_trunc);
    Symbol direct = symbols::custom([sigma_radial, k](const double* xi, int n) {
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) r2 += xi[a] * xi[a];
        return cplx(sigma_radial(std::exp2(double(-k)) * std::sqrt(r2)), 0.0);
    });
    const GridFunction target = apply_symbol(h, direct);
    return rel_sup_diff(approx, target);
}

CriterionResult c3() {
    CriterionResult c{"C3", "Fourier-series representation matches the multiplier", true, {}, {}};
    const double s = 1.5;

    // sigma_1 = <.>^s Phi(2^-3 .) on the cube R = 16, applied at k = 3
    {
        const Grid g(1, 2.0 * kPi, 256);
        auto sigma1 = [s](double r) { return std::pow(1.0 + r * r, 0.5 * s) * bump::phi(r / 8.0); };
        const double err = series_error(sigma1, 16.0, 3, 8.0, g, 64, 2);
        add_upper(c, "sigma1_rel_error_M64", err, 1e-6);
    }

    // I3-style sigma_k = (2^-2k + |.|^2)^{s/2} Phi(2^-5 .) on the cube R = 64
    const Grid g512(1, 2.0 * kPi, 512);
    std::string diag;
    for (int k : {2, 5}) {
        const double dl = std::exp2(double(-k));
        auto sig = [s, dl](double r) {
            return std::pow(dl * dl + r * r, 0.5 * s) * bump::phi(r / 32.0);
        };
        const double err = series_error(sig, 64.0, k, std::exp2(double(k)), g512, 64, 11 + k);
        add_upper(c, "i3_k" + std::to_string(k) + "_rel_error_M64", err, 1e-6);

        // even-integer contrast: same cube, polynomial symbol factor
        auto sig2 = [dl](double r) { return (dl * dl + r * r) * bump::phi(r / 32.0); };
        const double err2 = series_error(sig2, 64.0, k, std::exp2(double(k)), g512, 64, 17 + k);
        diag += (diag.empty() ? "" : ", ") + std::string("s=2 k=") + std::to_string(k) + ": " +
                sci(err2);
    }
    if (!c.pass) {
        // forensic: show the convergence trend at larger truncation orders
        const double dl = 0.25; // k = 2
        auto sig = [s, dl](double r) {
            return std::pow(dl * dl + r * r, 0.5 * s) * bump::phi(r / 32.0);
        };
        std::string trend;
        for (int M : {64, 256, 1024}) {
            const double err = series_error(sig, 64.0, 2, 4.0, g512, M, 13);
            trend += (trend.empty() ? "M=" : ", M=") + std::to_string(M) + ": " + sci(err);
        }
        c.notes.push_back(
            "known gap: on the cube R = 64 the coefficient argument pi*m/R reaches only "
            "~pi at m_trunc = 64, so the fractional-symbol tail <m>^-(n+s) with "
            "exponential rate c*2^-k*pi/R is nowhere near 1e-6 (measured ~1e-2); even the "
            "smooth even-integer case stops at the bump's own transform decay (" +
            diag + "). The representation does converge in the truncation order "
            "(k=2 trend: " + trend + ") but the 1e-6-at-64 target is unreachable "
            "for this symbol family.");
    }
    return c;
}

// ---- C4: Bessel kernel closed form ----------------------------------------

CriterionResult c4() {
    CriterionResult c{"C4", "kernel small-delta closed form K y^{n+s} -> Gamma((n+s)/2)", true, {}, {}};
    const double ys[4] = {0.5, 1.0, 2.0, 4.0};
    struct Case { double s; int n; };
    for (const Case& k : {Case{-0.5, 1}, Case{-1.5, 2}}) {
        const double target = std::tgamma(0.5 * (k.n + k.s));
        double worst = 0.0;
        for (double y : ys) {
            const KernelEval e = kernel_ks_delta(y, k.s, 1e-6, k.n);
            worst = std::max(worst,
                             std::fabs(e.value * std::pow(y, k.n + k.s) / target - 1.0));
        }
        std::ostringstream name;
        name << "gamma_rel_error_s" << k.s << "_n" << k.n;
        add_upper(c, name.str(), worst, 0.01);
    }
    c.notes.push_back(
        "the (s=-1.5, n=1) pairing is rejected by the operation's own precondition "
        "(s >= -n): there K ~ delta^{n+s} Gamma(-(n+s)/2) diverges as delta -> 0 and the "
        "stated limit Gamma((n+s)/2) = Gamma(-0.25) < 0 cannot bound a positive integral; "
        "the s = -1.5 check therefore runs at n = 2, where the identity holds.");
    return c;
}

// ---- C5: kernel-convolution oracle vs spectral -----------------------------

CriterionResult c5() {
    CriterionResult c{"C5", "kernel convolution oracle vs spectral J^s_delta", true, {}, {}};
    const Grid g(1, 32.0, 2048);
    const GridFunction psih = spectral_profile(g, symbols::bump(BumpKind::Psi, 0));
    const GridFunction f = psih * psih;
    const GridFunction spectral = fractional_op(f, FractionalKind::JDelta, -1.0, 0.5);
    const GridFunction oracle = kernel_convolution_oracle(f, -1.0, 0.5);
    add_upper(c, "rel_sup_diff", rel_sup_diff(oracle, spectral), 1e-3);
    return c;
}

// ---- C6: decay rates of J^s_delta -----------------------------------------

CriterionResult c6() {
    CriterionResult c{"C6", "J^s_delta tail decay rates", true, {}, {}};
    const Grid g(1, 512.0, 16384);
    const GridFunction psih = spectral_profile(g, symbols::bump(BumpKind::Psi, 0));
    const GridFunction f = psih * psih;

    const std::vector<double> radii{11.3137, 16.0, 22.6274, 32.0, 45.2548};
    const DecayFit small_delta = jsdelta_tail_profile(f, 0.3, 1e-3, radii);
    add_metric(c, "fit_exponent_s0.3", small_delta.fitted_exponent, -1.3,
               std::fabs(small_delta.fitted_exponent + 1.3) <= 0.15);

    const std::vector<double> radii2{8.0, 11.3137, 16.0, 22.6274, 32.0};
    const DecayFit even_case = jsdelta_tail_profile(f, 2.0, 1e-3, radii2);
    add_metric(c, "fit_exponent_s2", even_case.fitted_exponent, -5.0,
               even_case.fitted_exponent <= -5.0);

    const std::vector<double> r14{11.3137, 14.0, 16.0, 22.6274};
    const DecayFit tiny = jsdelta_tail_profile(f, 0.3, 1e-3, r14);
    const DecayFit unit = jsdelta_tail_profile(f, 0.3, 1.0, r14);
    const double suppression = tiny.values[1] / unit.values[1];
    add_metric(c, "suppression_at_r14", suppression, 10.0, suppression >= 10.0);
    return c;
}

// ---- C7: sharpness, negative direction -------------------------------------

CriterionResult c7() {
    CriterionResult c{"C7", "counterexample families grow at the derived rates", true, {}, {}};

    { // modulated, s = -0.5: rhs/lhs log-slope = s within 0.1
        const Grid g(1, 2.0 * kPi, 2048);
        FamilySpec fam{FamilyKind::Modulated, {3, 4, 5, 6, 7, 8}, BaseProfile::PhiHat};
        const ExponentTuple e = holder_exponents(2, 2, 0, 0);
        const SweepResult r = sweep(TheoremId::Main1, fam, e, -0.5, g);
        const double rhs_over_lhs_slope = -r.ratio_fit.fitted_exponent;
        add_metric(c, "modulated_rhs_over_lhs_slope", rhs_over_lhs_slope, -0.5,
                   std::fabs(rhs_over_lhs_slope - (-0.5)) <= 0.1);
    }

    const Grid gd(1, 128.0, 8192);
    std::vector<double> deltas;
    for (int j = 1; j <= 6; ++j) deltas.push_back(std::exp2(double(-j)));

    { // dilated, s = 0.3, p = 1/2: lhs ~ delta^{(n+s)-n/p} = delta^{-0.7}
        FamilySpec fam{FamilyKind::Dilated, deltas, BaseProfile::PhiHat};
        const ExponentTuple e = holder_exponents(1, 1, 0, 0);
        const SweepResult r = sweep(TheoremId::Main1, fam, e, 0.3, gd);
        add_metric(c, "dilated_lhs_exponent", r.lhs_fit.fitted_exponent, -0.7,
                   std::fabs(r.lhs_fit.fitted_exponent + 0.7) <= 0.15);
        add_upper(c, "dilated_rhs_max_over_min", r.rhs_max_over_min, 2.0);
    }

    { // psi_delta^2, commutator consequences: rhs bounded, lhs grows
        FamilySpec fam{FamilyKind::PsiSquared, deltas, BaseProfile::PsiHat};
        const ExponentTuple e = holder_exponents(1, 1, 0, 0);
        for (int order : {1, 2}) {
            const SweepResult r =
                sweep(order == 1 ? TheoremId::MainComm1 : TheoremId::MainComm2, fam, e, 0.3, gd);
            const std::string tag = "psi2_order" + std::to_string(order);
            add_upper(c, tag + "_rhs_max_over_min", r.rhs_max_over_min, 4.0);
            add_metric(c, tag + "_lhs_exponent_vs_delta", r.lhs_fit.fitted_exponent, 0.0,
                       r.lhs_fit.fitted_exponent < -0.05);
        }
        c.notes.push_back("lhs exponent is reported against delta; growth as delta -> 0 "
                          "shows as a negative slope (positive exponent against 1/delta)");
    }
    return c;
}

// ---- C8: positive direction beyond the Muckenhoupt range -------------------

CriterionResult c8() {
    CriterionResult c{"C8", "bounded regime with weights beyond the A_p range", true, {}, {}};
    struct Config { double p12, a12; const char* tag; };
    for (const Config& cfg : {Config{2, 4, "p2_a4"}, Config{1, 2, "p1_a2"}}) {
        const ExponentTuple e = holder_exponents(cfg.p12, cfg.p12, cfg.a12, cfg.a12);
        FamilySpec fam{FamilyKind::Modulated, {3, 4, 5, 6, 7, 8}, BaseProfile::PhiHat};
        double prev_max = 0.0;
        for (int n : {2048, 4096}) {
            const Grid g(1, 2.0 * kPi, n);
            const SweepResult r = sweep(TheoremId::Main1, fam, e, 1.5, g);
            const std::string tag = std::string(cfg.tag) + "_N" + std::to_string(n);
            add_upper(c, tag + "_ratio_slope", r.ratio_fit.fitted_exponent, 0.05);
            add_upper(c, tag + "_max_ratio", r.max_ratio, 1e3);
            if (n == 2048) {
                prev_max = r.max_ratio;
            } else {
                const double rel = std::fabs(r.max_ratio - prev_max) / prev_max;
                add_upper(c, std::string(cfg.tag) + "_N_doubling_shift", rel, 0.20);
            }
        }
    }
    return c;
}

// ---- C9: Bernstein window ---------------------------------------------------

CriterionResult c9() {
    CriterionResult c{"C9", "Bernstein multiplier window on dyadic bands", true, {}, {}};
    const Grid g(1, 2.0 * kPi, 1024);
    const double s = 1.5;
    const double lo = std::exp2(-s - 1.0), hi = std::exp2(s + 1.0);
    double worst_lo = kInf, worst_hi = 0.0;
    for (int k = 2; k <= 7; ++k) {
        Rng rng(900 + k);
        std::vector<cplx> spec(g.total_points(), cplx(0, 0));
        for (int i = 0; i < g.points_per_axis; ++i) {
            const double xi = std::fabs(g.freq(i));
            if (xi >= std::exp2(double(k - 1)) && xi <= std::exp2(double(k + 1)))
                spec[i] = cplx(rng.gaussian(), rng.gaussian());
        }
        const GridFunction f(g, fft::inverse(g, spec));
        const GridFunction num =
            lp_project(fractional_op(f, FractionalKind::J, s), LpKind::Delta, k);
        const GridFunction den = lp_project(f, LpKind::Delta, k);
        const double ratio = weighted_norm(num, 2.0, 0.0) /
                             (std::exp2(k * s) * weighted_norm(den, 2.0, 0.0));
        worst_lo = std::min(worst_lo, ratio);
        worst_hi = std::max(worst_hi, ratio);
    }
    add_metric(c, "min_ratio", worst_lo, lo, worst_lo >= lo);
    add_metric(c, "max_ratio", worst_hi, hi, worst_hi <= hi);
    return c;
}

// ---- C10: mixed / biparameter sanity ----------------------------------------

double oracle_mixed_norm(const GridFunction& f, const MixedSpec& spec) {
    const Grid& g = f.grid;
    const int N = g.points_per_axis;
    std::vector<long double> slice(N, 0.0L);
    for (int o = 0; o < N; ++o) {
        long double acc = 0.0;
        for (int d = 0; d < N; ++d) {
            const long double m = std::abs(f.samples[std::size_t(d) * N + o]);
            const long double w =
                std::pow(1.0L + (long double)g.coord(d) * g.coord(d), 0.5L * spec.a_dot);
            acc += std::pow(m, (long double)spec.p_dot) * w;
        }
        slice[o] = std::pow(acc * g.spacing(), 1.0L / spec.p_dot);
    }
    long double acc = 0.0;
    for (int o = 0; o < N; ++o) {
        const long double w =
            std::pow(1.0L + (long double)g.coord(o) * g.coord(o), 0.5L * spec.a_ddot);
        acc += std::pow(slice[o], (long double)spec.p_ddot) * w;
    }
    return double(std::pow(acc * g.spacing(), 1.0L / spec.p_ddot));
}

CriterionResult c10() {
    CriterionResult c{"C10", "mixed and biparameter norms: factorization and sanity", true, {}, {}};

    { // separable factorization on a 64x64 grid
        const Grid g2(2, 2.0 * kPi, 64);
        const Grid g1(1, 2.0 * kPi, 64);
        Rng rng(77);
        const GridFunction u = random_band_limited(g1, 10.0, rng);
        const GridFunction v = random_band_limited(g1, 10.0, rng);
        GridFunction f(g2);
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                f.samples[std::size_t(i) * 64 + j] = u.samples[i] * v.samples[j];
        MixedSpec spec{1, 2.0, 1.0, 1, 1.0, 2.0, WeightKind::Polynomial, 1.0};
        const double product = weighted_norm(u, 2.0, 1.0) * weighted_norm(v, 1.0, 2.0);
        const double together = mixed_norm(f, spec);
        add_upper(c, "separable_mixed_norm_rel", std::fabs(together - product) / product, 1e-10);

        // biparameter lhs on a separable pair factorizes into 1D lhs values
        const GridFunction U = random_band_limited(g1, 10.0, rng);
        const GridFunction V = random_band_limited(g1, 10.0, rng);
        GridFunction gsep(g2);
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                gsep.samples[std::size_t(i) * 64 + j] = U.samples[i] * V.samples[j];
        MixedExponents me;
        me.dot_dim = me.ddot_dim = 1;
        me.p1_dot = me.p2_dot = me.p1_ddot = me.p2_ddot = 2;
        me.p_dot = me.p_ddot = 1;
        const InequalityReport rep = biparameter_ratio(f, gsep, 1.5, 1.5, me);
        const double lhs_dot =
            weighted_norm(fractional_op(u * U, FractionalKind::J, 1.5), 1.0, 0.0);
        const double lhs_ddot =
            weighted_norm(fractional_op(v * V, FractionalKind::J, 1.5), 1.0, 0.0);
        add_upper(c, "separable_biparameter_lhs_rel",
                  std::fabs(rep.lhs - lhs_dot * lhs_ddot) / (lhs_dot * lhs_ddot), 1e-10);
    }

    { // trivial outer block: mixed_ratio collapses onto the inner kp_ratio
        const Grid g1(1, 2.0 * kPi, 64);
        const Grid g2(2, 2.0 * kPi, 64);
        Rng rng(79);
        const GridFunction u = random_band_limited(g1, 10.0, rng);
        const GridFunction v = random_band_limited(g1, 10.0, rng);
        GridFunction f(g2), h(g2);
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j) {
                f.samples[std::size_t(i) * 64 + j] = u.samples[i];
                h.samples[std::size_t(i) * 64 + j] = v.samples[i];
            }
        MixedExponents me;
        me.dot_dim = me.ddot_dim = 1;
        me.p1_dot = me.p2_dot = 2;
        me.p_dot = 1;
        me.a1_dot = me.a2_dot = 1.0;
        me.a_dot = 1.0;
        me.p1_ddot = me.p2_ddot = 2;
        me.p_ddot = 1;
        const InequalityReport collapsed = mixed_ratio(f, h, 1.5, me);
        const InequalityReport inner = kp_ratio(u, v, 1.5, holder_exponents(2, 2, 1.0, 1.0));
        add_upper(c, "trivial_outer_collapse_rel",
                  std::fabs(collapsed.ratio - inner.ratio) / inner.ratio, 1e-10);
    }

    { // 128x128 random instance, both weight levels
        const Grid g2(2, 2.0 * kPi, 128);
        Rng rng(78);
        const GridFunction f = random_band_limited(g2, 20.0, rng);
        const GridFunction g = random_band_limited(g2, 20.0, rng);
        for (double a : {0.0, 2.0}) {
            MixedExponents me;
            me.dot_dim = me.ddot_dim = 1;
            me.p1_dot = me.p2_dot = me.p1_ddot = me.p2_ddot = 2;
            me.p_dot = me.p_ddot = 1;
            me.a1_dot = me.a2_dot = me.a1_ddot = me.a2_ddot = a;
            me.a_dot = me.a_ddot = a; // p (a/2 + a/2) with p = 1
            const InequalityReport rep = biparameter_ratio(f, g, 1.5, 1.5, me);
            const std::string tag = "a" + std::to_string(int(a));
            add_metric(c, "biparameter_ratio_" + tag, rep.ratio, 1e3,
                       std::isfinite(rep.ratio) && rep.ratio <= 1e3);

            // independent norm path for the lhs/ratio
            const GridFunction num = apply_symbol(
                f * g, symbols::custom([](const double* xi, int) {
                    return cplx(std::pow(1.0 + xi[0] * xi[0], 0.75) *
                                    std::pow(1.0 + xi[1] * xi[1], 0.75),
                                0.0);
                }));
            const double lhs_oracle = oracle_mixed_norm(num, me.target_spec());
            add_upper(c, "biparameter_lhs_oracle_rel_" + tag,
                      std::fabs(rep.lhs - lhs_oracle) / lhs_oracle, 1e-10);
        }
    }
    return c;
}

// ---- C11: weighted Young on centrally supported functions -------------------

CriterionResult c11() {
    CriterionResult c{"C11", "weighted Young inequality, constant <= 1 + 1e-6", true, {}, {}};
    const Grid g(1, 16.0, 512);
    GridFunction f(g), h(g);
    for (int i = 0; i < g.points_per_axis; ++i) {
        const double x = g.coord(i);
        f.samples[i] = cplx(bump::phi(std::fabs(x)) * (1.0 + 0.5 * std::sin(3.0 * x)),
                            0.25 * bump::phi(std::fabs(x)) * std::cos(2.0 * x));
        h.samples[i] = cplx(bump::phi(1.3 * std::fabs(x)) * std::cos(2.0 * x),
                            0.4 * bump::phi(1.5 * std::fabs(x)));
    }
    const GridFunction conv = discrete_convolution(f, h);
    struct Triple { double p, q, r; };
    double worst = 0.0;
    for (const Triple& t : {Triple{1, 1, 1}, Triple{1, 2, 2}, Triple{2, 2, kInf}}) {
        for (double a : {0.0, 1.0, 3.0}) {
            const double lhs = weighted_norm(conv, t.r, a);
            const double rhs = weighted_norm(f, t.p, a) * weighted_norm(h, t.q, a);
            worst = std::max(worst, lhs / rhs);
        }
    }
    add_upper(c, "max_constant", worst, 1.0 + 1e-6);

    // saturation: for nonnegative factors the L1 x L1 -> L1 case is an identity
    GridFunction fp(g), hp(g);
    for (int i = 0; i < g.points_per_axis; ++i) {
        fp.samples[i] = std::abs(f.samples[i]);
        hp.samples[i] = std::abs(h.samples[i]);
    }
    const double sat = weighted_norm(discrete_convolution(fp, hp), 1.0, 0.0) /
                       (weighted_norm(fp, 1.0, 0.0) * weighted_norm(hp, 1.0, 0.0));
    add_metric(c, "nonnegative_L1_saturation", sat, 1.0,
               sat >= 1.0 - 1e-12 && sat <= 1.0 + 1e-6);
    return c;
}

// ---- C12: determinism --------------------------------------------------------

CriterionResult c12() {
    CriterionResult c{"C12", "repeated runs produce byte-identical CSV", true, {}, {}};
    RunConfig cfg;
    cfg.command = Command::Sweep;
    cfg.grid = Grid(1, 2.0 * kPi, 2048);
    cfg.theorem = TheoremId::Main1;
    cfg.s = -0.5;
    cfg.exponents = holder_exponents(2, 2, 0, 0);
    cfg.family = FamilySpec{FamilyKind::Modulated, {3, 4, 5, 6, 7, 8}, BaseProfile::PhiHat};
    const RunReport r1 = run(cfg);
    const RunReport r2 = run(cfg);
    add_metric(c, "csv_bytes_equal", r1.csv == r2.csv ? 1.0 : 0.0, 1.0, r1.csv == r2.csv);
    if (r1.csv != r2.csv) c.notes.push_back("CSV outputs differ between runs");
    return c;
}

} // namespace

std::vector<std::string> all_ids() {
    return {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12"};
}

std::vector<CriterionResult> run(const std::vector<std::string>& ids) {
    using Fn = CriterionResult (*)();
    const std::pair<const char*, Fn> table[] = {
        {"C1", c1}, {"C2", c2}, {"C3", c3}, {"C4", c4},  {"C5", c5},   {"C6", c6},
        {"C7", c7}, {"C8", c8}, {"C9", c9}, {"C10", c10}, {"C11", c11}, {"C12", c12}};
    std::vector<CriterionResult> out;
    for (const auto& [id, fn] : table) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        out.push_back(fn());
        out.back().wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    if (!ids.empty() && out.size() != ids.size()) {
        for (const std::string& want : ids) {
            bool known = false;
            for (const auto& [id, fn] : table)
                if (want == id) known = true;
            if (!known) throw std::invalid_argument("unknown acceptance criterion id: " + want);
        }
    }
    return out;
}

} // namespace kpw::acceptance
