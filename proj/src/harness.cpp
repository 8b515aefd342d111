#include "kpw/harness.hpp"

#include "kpw/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace kpw {

std::string theorem_name(TheoremId id) {
    switch (id) {
    case TheoremId::Main1: return "main1";
    case TheoremId::MainComm1: return "main_comm1";
    case TheoremId::MainComm2: return "main_comm2";
    case TheoremId::Main2: return "main2";
    case TheoremId::Main3: return "main3";
    }
    return "?";
}

namespace {

GridFunction base_profile_fn(BaseProfile tag, const Grid& g, double delta) {
    // inverse transform (centered) of the bump rescaled by delta in frequency
    Symbol m = symbols::custom([tag, delta](const double* xi, int n) {
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) r2 += xi[a] * xi[a];
        const double r = delta * std::sqrt(r2);
        double jac = 1.0;
        for (int a = 0; a < n; ++a) jac *= delta;
        return cplx(jac * (tag == BaseProfile::PhiHat ? bump::phi(r) : bump::psi(r)), 0.0);
    });
    return spectral_profile(g, m);
}

double finite_ratio(double lhs, double rhs, bool& degenerate) {
    if (rhs > 0.0) return lhs / rhs;
    degenerate = true;
    return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

} // namespace

std::vector<std::pair<GridFunction, GridFunction>> family_generate(const FamilySpec& spec,
                                                                   const Grid& grid) {
    std::vector<std::pair<GridFunction, GridFunction>> out;
    const double half_nyq = 0.5 * grid.nyquist();
    switch (spec.kind) {
    case FamilyKind::Modulated: {
        const GridFunction prof = base_profile_fn(spec.base_profile, grid, 1.0);
        for (double kd : spec.params) {
            const int k = int(std::lround(kd));
            if (std::fabs(kd - k) > 1e-12)
                throw std::invalid_argument("modulated family: k must be an integer");
            const double mod = std::exp2(double(k));
            if (mod + 2.0 > half_nyq)
                throw std::invalid_argument("modulated family: 2^k + bump width aliases at k=" +
                                            std::to_string(k));
            std::vector<double> k0(grid.dim, 0.0);
            k0[0] = mod;
            GridFunction f = modulate(prof, k0);
            for (double& c : k0) c = -c;
            GridFunction g = modulate(prof, k0);
            out.emplace_back(std::move(f), std::move(g));
        }
        return out;
    }
    case FamilyKind::Dilated:
    case FamilyKind::PsiSquared: {
        const BaseProfile tag =
            spec.kind == FamilyKind::PsiSquared ? BaseProfile::PsiHat : spec.base_profile;
        for (double d : spec.params) {
            if (!(d > 0.0 && d <= 1.0))
                throw std::invalid_argument("dilated family: delta must lie in (0,1]");
            if (2.0 / d > half_nyq)
                throw std::invalid_argument("dilated family: band 2/delta aliases at delta=" +
                                            std::to_string(d));
            GridFunction f = base_profile_fn(tag, grid, d);
            out.emplace_back(f, f);
        }
        return out;
    }
    }
    throw std::invalid_argument("unknown family kind");
}

InequalityReport kp_ratio(const GridFunction& f, const GridFunction& g, double s,
                          const ExponentTuple& e, WeightKind wkind, double wscale) {
    e.validate();
    InequalityReport r;
    r.theorem_id = TheoremId::Main1;
    r.s = s;
    r.grid = f.grid;
    const WeightSpec w{wkind, e.a, wscale};
    const WeightSpec w1{wkind, e.a1, wscale};
    const WeightSpec w2{wkind, e.a2, wscale};
    r.lhs = weighted_norm(fractional_op(f * g, FractionalKind::J, s), e.p, w);
    r.rhs_terms = {weighted_norm(fractional_op(f, FractionalKind::J, s), e.p1, w1) *
                       weighted_norm(g, e.p2, w2),
                   weighted_norm(f, e.p1, w1) *
                       weighted_norm(fractional_op(g, FractionalKind::J, s), e.p2, w2)};
    r.rhs = r.rhs_terms[0] + r.rhs_terms[1];
    r.ratio = finite_ratio(r.lhs, r.rhs, r.degenerate);
    return r;
}

namespace {

GridFunction gradient_magnitude(const GridFunction& f) {
    const auto gr = gradient(f);
    GridFunction m(f.grid);
    for (std::size_t i = 0; i < m.samples.size(); ++i) {
        double acc = 0.0;
        for (int a = 0; a < f.grid.dim; ++a) acc += std::norm(gr[a].samples[i]);
        m.samples[i] = std::sqrt(acc);
    }
    return m;
}

} // namespace

InequalityReport commutator_ratio(const GridFunction& f, const GridFunction& g, double s,
                                  const ExponentTuple& e, int order, WeightKind wkind,
                                  double wscale) {
    e.validate();
    if (order != 1 && order != 2) throw std::invalid_argument("commutator order must be 1 or 2");
    InequalityReport r;
    r.theorem_id = order == 1 ? TheoremId::MainComm1 : TheoremId::MainComm2;
    r.s = s;
    r.grid = f.grid;
    const WeightSpec w{wkind, e.a, wscale};
    const WeightSpec w1{wkind, e.a1, wscale};
    const WeightSpec w2{wkind, e.a2, wscale};
    r.lhs = weighted_norm(commutator_lhs(f, g, s, order), e.p, w);
    r.rhs_terms = {weighted_norm(fractional_op(f, FractionalKind::J, s), e.p1, w1) *
                       weighted_norm(g, e.p2, w2),
                   weighted_norm(gradient_magnitude(f), e.p1, w1) *
                       weighted_norm(fractional_op(g, FractionalKind::J, s - 1.0), e.p2, w2)};
    r.rhs = r.rhs_terms[0] + r.rhs_terms[1];
    r.ratio = finite_ratio(r.lhs, r.rhs, r.degenerate);
    return r;
}

void MixedExponents::validate() const {
    auto inv = [](double v) { return v == kInf ? 0.0 : 1.0 / v; };
    auto check = [&](double p, double p1, double p2, double a, double a1, double a2,
                     const char* which) {
        if (std::fabs(inv(p) - inv(p1) - inv(p2)) > 1e-12)
            throw std::invalid_argument(std::string("mixed exponents: 1/p relation fails (") +
                                        which + ")");
        const double lhs = p == kInf ? 0.0 : a / p;
        const double rhs = (p1 == kInf ? 0.0 : a1 / p1) + (p2 == kInf ? 0.0 : a2 / p2);
        if (std::fabs(lhs - rhs) > 1e-12)
            throw std::invalid_argument(std::string("mixed exponents: a/p relation fails (") +
                                        which + ")");
    };
    check(p_dot, p1_dot, p2_dot, a_dot, a1_dot, a2_dot, "dot");
    check(p_ddot, p1_ddot, p2_ddot, a_ddot, a1_ddot, a2_ddot, "ddot");
    if (dot_dim < 1 || ddot_dim < 1)
        throw std::invalid_argument("mixed exponents: dims must be positive");
}

MixedSpec MixedExponents::target_spec() const {
    return MixedSpec{dot_dim, p_dot, a_dot, ddot_dim, p_ddot, a_ddot, WeightKind::Polynomial, 1.0};
}
MixedSpec MixedExponents::factor1_spec() const {
    return MixedSpec{dot_dim, p1_dot, a1_dot, ddot_dim, p1_ddot, a1_ddot,
                     WeightKind::Polynomial, 1.0};
}
MixedSpec MixedExponents::factor2_spec() const {
    return MixedSpec{dot_dim, p2_dot, a2_dot, ddot_dim, p2_ddot, a2_ddot,
                     WeightKind::Polynomial, 1.0};
}

InequalityReport mixed_ratio(const GridFunction& f, const GridFunction& g, double s,
                             const MixedExponents& me) {
    me.validate();
    if (me.dot_dim + me.ddot_dim != f.grid.dim)
        throw std::invalid_argument("mixed_ratio: dims do not partition the grid dimension");
    InequalityReport r;
    r.theorem_id = TheoremId::Main2;
    r.s = s;
    r.grid = f.grid;
    r.lhs = mixed_norm(fractional_op(f * g, FractionalKind::J, s), me.target_spec());
    r.rhs_terms = {mixed_norm(fractional_op(f, FractionalKind::J, s), me.factor1_spec()) *
                       mixed_norm(g, me.factor2_spec()),
                   mixed_norm(f, me.factor1_spec()) *
                       mixed_norm(fractional_op(g, FractionalKind::J, s), me.factor2_spec())};
    r.rhs = r.rhs_terms[0] + r.rhs_terms[1];
    r.ratio = finite_ratio(r.lhs, r.rhs, r.degenerate);
    return r;
}

namespace {

// <xi_dot>^{s_dot} <xi_ddot>^{s_ddot} acting on split frequency blocks
Symbol biparameter_symbol(double s_dot, double s_ddot, int dot_dim) {
    return symbols::custom([s_dot, s_ddot, dot_dim](const double* xi, int n) {
        double r2d = 0.0, r2dd = 0.0;
        for (int a = 0; a < dot_dim; ++a) r2d += xi[a] * xi[a];
        for (int a = dot_dim; a < n; ++a) r2dd += xi[a] * xi[a];
        return cplx(std::pow(1.0 + r2d, 0.5 * s_dot) * std::pow(1.0 + r2dd, 0.5 * s_ddot), 0.0);
    });
}

} // namespace

InequalityReport biparameter_ratio(const GridFunction& f, const GridFunction& g, double s_dot,
                                   double s_ddot, const MixedExponents& me) {
    me.validate();
    if (me.dot_dim + me.ddot_dim != f.grid.dim)
        throw std::invalid_argument("biparameter_ratio: dims do not partition the grid dim");
    InequalityReport r;
    r.theorem_id = TheoremId::Main3;
    r.s = s_dot;
    r.s_ddot = s_ddot;
    r.grid = f.grid;
    const Symbol both = biparameter_symbol(s_dot, s_ddot, me.dot_dim);
    const Symbol dot_only = biparameter_symbol(s_dot, 0.0, me.dot_dim);
    const Symbol ddot_only = biparameter_symbol(0.0, s_ddot, me.dot_dim);
    const MixedSpec m1 = me.factor1_spec(), m2 = me.factor2_spec();
    r.lhs = mixed_norm(apply_symbol(f * g, both), me.target_spec());
    r.rhs_terms = {mixed_norm(apply_symbol(f, both), m1) * mixed_norm(g, m2),
                   mixed_norm(apply_symbol(f, dot_only), m1) *
                       mixed_norm(apply_symbol(g, ddot_only), m2),
                   mixed_norm(apply_symbol(f, ddot_only), m1) *
                       mixed_norm(apply_symbol(g, dot_only), m2),
                   mixed_norm(f, m1) * mixed_norm(apply_symbol(g, both), m2)};
    r.rhs = 0.0;
    for (double t : r.rhs_terms) r.rhs += t;
    r.ratio = finite_ratio(r.lhs, r.rhs, r.degenerate);
    return r;
}

namespace {

// rescaled commutator-consequence instance for the psi-squared family:
// lhs = |J^s_d (psi_d^2)|, rhs per the first-order (3 terms) or second-order
// (4 terms) consequence, all with weights <delta x>^a.
InequalityReport psi_squared_instance(const GridFunction& psi, double delta, double s,
                                      const ExponentTuple& e, int order, WeightKind wkind) {
    InequalityReport r;
    r.theorem_id = order == 1 ? TheoremId::MainComm1 : TheoremId::MainComm2;
    r.s = s;
    r.grid = psi.grid;
    r.family_param = delta;
    const WeightSpec w{wkind, e.a, delta};
    const WeightSpec w1{wkind, e.a1, delta};
    const WeightSpec w2{wkind, e.a2, delta};
    auto Jd = [&](const GridFunction& v, double alpha) {
        return fractional_op(v, FractionalKind::JDelta, alpha, delta);
    };
    r.lhs = weighted_norm(Jd(psi * psi, s), e.p, w);
    const double t1 = weighted_norm(Jd(psi, s), e.p1, w1) * weighted_norm(psi, e.p2, w2);
    const double t2 = weighted_norm(psi, e.p1, w1) * weighted_norm(Jd(psi, s), e.p2, w2);
    const double t3 = weighted_norm(gradient_magnitude(psi), e.p1, w1) *
                      weighted_norm(Jd(psi, s - 1.0), e.p2, w2);
    r.rhs_terms = {t1, t2, t3};
    if (order == 2) {
        r.rhs_terms.push_back(weighted_norm(gradient_magnitude(psi), e.p1, w1) *
                              weighted_norm(gradient_magnitude(Jd(psi, s - 2.0)), e.p2, w2));
    }
    r.rhs = 0.0;
    for (double t : r.rhs_terms) r.rhs += t;
    r.ratio = finite_ratio(r.lhs, r.rhs, r.degenerate);
    return r;
}

// rescaled product instance for the dilated family: lhs = |J^s_d (fg)| etc.
InequalityReport dilated_instance(const GridFunction& prof, double delta, double s,
                                  const ExponentTuple& e, WeightKind wkind) {
    InequalityReport r;
    r.theorem_id = TheoremId::Main1;
    r.s = s;
    r.grid = prof.grid;
    r.family_param = delta;
    const WeightSpec w{wkind, e.a, delta};
    const WeightSpec w1{wkind, e.a1, delta};
    const WeightSpec w2{wkind, e.a2, delta};
    auto Jd = [&](const GridFunction& v, double alpha) {
        return fractional_op(v, FractionalKind::JDelta, alpha, delta);
    };
    r.lhs = weighted_norm(Jd(prof * prof, s), e.p, w);
    r.rhs_terms = {weighted_norm(Jd(prof, s), e.p1, w1) * weighted_norm(prof, e.p2, w2),
                   weighted_norm(prof, e.p1, w1) * weighted_norm(Jd(prof, s), e.p2, w2)};
    r.rhs = r.rhs_terms[0] + r.rhs_terms[1];
    r.ratio = finite_ratio(r.lhs, r.rhs, r.degenerate);
    return r;
}

// index-parallel map with a deterministic, index-ordered result
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
    const int want = std::min<int>(max_threads(), int(count));
    if (want <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    for (int t = 0; t < want; ++t)
        pool.emplace_back([&] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

DecayFit fit_or_empty(const std::vector<double>& xs, const std::vector<double>& ys) {
    DecayFit f;
    f.radii = xs;
    f.values = ys;
    if (xs.size() >= 4) return tail_exponent_fit(xs, ys);
    // fall back to an unweighted two-point slope when the window is short
    if (xs.size() >= 2) {
        const std::size_t m = xs.size();
        f.fitted_exponent = std::log(ys[m - 1] / ys[0]) / std::log(xs[m - 1] / xs[0]);
    }
    return f;
}

} // namespace

SweepResult sweep(TheoremId id, const FamilySpec& family, const ExponentTuple& e, double s,
                  const Grid& grid, WeightKind wkind) {
    e.validate();
    SweepResult out;

    if (family.kind == FamilyKind::Modulated) {
        auto pairs = family_generate(family, grid);
        out.reports.resize(pairs.size());
        parallel_for_index(pairs.size(), [&](std::size_t i) {
            InequalityReport r;
            switch (id) {
            case TheoremId::Main1:
                r = kp_ratio(pairs[i].first, pairs[i].second, s, e, wkind);
                break;
            case TheoremId::MainComm1:
                r = commutator_ratio(pairs[i].first, pairs[i].second, s, e, 1, wkind);
                break;
            case TheoremId::MainComm2:
                r = commutator_ratio(pairs[i].first, pairs[i].second, s, e, 2, wkind);
                break;
            default:
                throw std::invalid_argument("sweep: theorem/family combination not supported");
            }
            r.family_param = std::exp2(family.params[i]); // scale 2^k
            out.reports[i] = std::move(r);
        });
    } else {
        // delta families run the rescaled equivalent form at a fixed profile
        std::vector<double> sorted = family.params;
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        const GridFunction prof = base_profile_fn(
            family.kind == FamilyKind::PsiSquared ? BaseProfile::PsiHat : family.base_profile,
            grid, 1.0);
        for (double d : sorted)
            if (!(d > 0.0 && d <= 1.0))
                throw std::invalid_argument("sweep: delta must lie in (0,1]");
        out.reports.resize(sorted.size());
        parallel_for_index(sorted.size(), [&](std::size_t i) {
            const double d = sorted[i];
            switch (id) {
            case TheoremId::Main1:
                out.reports[i] = dilated_instance(prof, d, s, e, wkind);
                break;
            case TheoremId::MainComm1:
                out.reports[i] = psi_squared_instance(prof, d, s, e, 1, wkind);
                break;
            case TheoremId::MainComm2:
                out.reports[i] = psi_squared_instance(prof, d, s, e, 2, wkind);
                break;
            default:
                throw std::invalid_argument("sweep: theorem/family combination not supported");
            }
        });
    }

    // fits over the interior window (drop the two extreme family parameters)
    std::vector<double> xs, ratios, lhss, rhss;
    const std::size_t m = out.reports.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (m >= 4 && (i == 0 || i == m - 1)) continue;
        const auto& r = out.reports[i];
        xs.push_back(r.family_param);
        ratios.push_back(r.ratio);
        lhss.push_back(r.lhs);
        rhss.push_back(r.rhs);
    }
    // fits need increasing abscissas
    if (!xs.empty() && xs.front() > xs.back()) {
        std::reverse(xs.begin(), xs.end());
        std::reverse(ratios.begin(), ratios.end());
        std::reverse(lhss.begin(), lhss.end());
        std::reverse(rhss.begin(), rhss.end());
    }
    out.ratio_fit = fit_or_empty(xs, ratios);
    out.lhs_fit = fit_or_empty(xs, lhss);
    out.rhs_fit = fit_or_empty(xs, rhss);

    double rmax = 0.0, rmin = kInf, lmax = 0.0, lmin = kInf, ratmax = 0.0;
    for (const auto& r : out.reports) {
        rmax = std::max(rmax, r.rhs);
        rmin = std::min(rmin, r.rhs);
        lmax = std::max(lmax, r.lhs);
        lmin = std::min(lmin, r.lhs);
        ratmax = std::max(ratmax, r.ratio);
    }
    out.rhs_max_over_min = rmin > 0.0 ? rmax / rmin : kInf;
    out.lhs_max_over_min = lmin > 0.0 ? lmax / lmin : kInf;
    out.max_ratio = ratmax;
    return out;
}

SharpnessClass sharpness_classify(double s, double p, int n) {
    if (!(p > 0.0) || n < 1) throw std::invalid_argument("sharpness_classify: bad arguments");
    const double half = s / 2.0;
    if (s > 0.0 && std::fabs(half - std::round(half)) <= 1e-12 && std::round(half) >= 1.0)
        return SharpnessClass::EvenIntegerException;
    const double threshold = std::max(0.0, n * (1.0 / p - 1.0));
    return s > threshold ? SharpnessClass::BoundedExpected : SharpnessClass::DivergentExpected;
}

} // namespace kpw
