#include "fps/composition.hpp"

#include <algorithm>
#include <cmath>

namespace fps {

const char* to_string(SpecialCase sc) {
    switch (sc) {
        case SpecialCase::None: return "none";
        case SpecialCase::ConstantInner: return "constant_inner";
        case SpecialCase::NonunitInner: return "nonunit_inner";
    }
    return "?";
}

bool CompositionReport::exists() const {
    if (G.empty()) return false;
    for (const auto& v : G)
        if (!v.converged()) return false;
    return true;
}

bool CompositionReport::any_inconclusive() const {
    for (const auto& v : G)
        if (v.inconclusive()) return true;
    return false;
}

ConvergenceVerdict g_shifted_sum(const CoeffSequence& g, double b0, long s,
                                 const VerdictOptions& opts) {
    if (s < 0) throw std::invalid_argument("g_shifted_sum: s must be >= 0");

    if (b0 == 0.0) {
        // Only n = s survives: G_s = C(s,s) g_s 0^0 = g_s, exactly.
        if (auto ex = g.coeff_exact(s)) return ConvergenceVerdict::exact(std::move(*ex));
        auto v = ConvergenceVerdict::converged_numeric(g.coeff_double(s), 0.0, "exact", 1);
        return v;
    }

    // Term stream t_j for n = s + j, with C(n,s) and b0^{n-s} kept incrementally.
    // The binomial factor is tracked separately so that transient growth does
    // not poison small terms.
    auto make_terms = [&g, b0, s]() {
        return [&g, b0, s, binom = 1.0, pw = 1.0, first = true](long j) mutable -> double {
            const long n = s + j;
            if (first) {
                first = false;
            } else {
                binom *= static_cast<double>(n) / static_cast<double>(n - s);
                pw *= b0;
            }
            const double gn = g.coeff_double(n);
            if (gn == 0.0 || pw == 0.0) return 0.0;
            // multiply the small parts first: gn*pw often cancels binom's size
            return gn * pw * binom;
        };
    };

    if (g.radius()) {
        const double R = g.radius()->value;
        if (std::fabs(b0) < R) return certified_sum(make_terms(), opts);
        if (std::fabs(b0) > R) {
            return ConvergenceVerdict::diverged_with(
                DivergenceWitness{"pivot b0 outside the radius of the outer series", s, s,
                                  std::fabs(b0)},
                0);
        }
        // |b0| == R: boundary, fall through to the numeric verdict.
    }
    return partial_sum_verdict(make_terms(), opts);
}

namespace {

// Assemble h from verdict values and the d-table: h_(0..0) = G_0,
// h[k] = sum_{s=1..k} s! G_s d_{k,s}.
template <typename S>
TruncatedSeries<S> assemble(int q, int K, const std::vector<S>& gvals, const DTable<S>& dt) {
    TruncatedSeries<S> h(q, K);
    h.add_to(MultiIndex::zero(q), gvals[0]);
    for (int k = 1; k <= K; ++k) {
        for (int s = 1; s <= k; ++s) {
            const auto& cell = dt.at(k, s);
            if (cell.is_zero()) continue;
            const S coef = S(scalar_from_bigint<S>(factorial(static_cast<unsigned long>(s))) *
                             gvals[static_cast<std::size_t>(s)]);
            if (scalar_is_zero(coef)) continue;
            for (const auto& [c, v] : cell.terms()) h.add_to(c, S(coef * v));
        }
    }
    return h;
}

// Direct truncated partial sum sum_{n=0}^{depth} g_n f^n for the cross-check.
// Coefficient access for g is via `gn`, so the exact and numeric paths share it.
template <typename S, typename CoeffFn>
TruncatedSeries<S> direct_partial(const TruncatedSeries<S>& f, const CoeffFn& gn, int depth) {
    const int q = f.vars(), K = f.truncation();
    TruncatedSeries<S> acc(q, K);
    acc.add_to(MultiIndex::zero(q), gn(0));
    TruncatedSeries<S> p = TruncatedSeries<S>::identity(q, K);
    for (int n = 1; n <= depth; ++n) {
        p = mul(p, f);
        if (p.is_zero()) break;  // nonunit inner: powers vanish past K
        const S c = gn(n);
        if (scalar_is_zero(c)) continue;
        for (const auto& [idx, v] : p.terms()) acc.add_to(idx, S(c * v));
    }
    return acc;
}

struct Pivot {
    ReportScalar b0;
    bool constant_inner = false;
};

template <typename S>
Pivot inspect(const TruncatedSeries<S>& f) {
    Pivot p;
    const S b0 = f.constant_term();
    p.b0.approx = scalar_to_double(b0);
    if constexpr (std::is_same_v<S, Rational>) p.b0.exact = b0;
    p.constant_inner = !lowest_nonconstant_block(f).has_value();
    return p;
}

CompositionReport run_compose(const CoeffSequence& g, const AnySeries& f,
                              const ComposeOptions& opts, bool want_result) {
    CompositionReport rep;
    rep.q = any_vars(f);
    rep.K = any_truncation(f);
    const Pivot piv = std::visit([](const auto& s) { return inspect(s); }, f);
    rep.b0 = piv.b0;
    const int K = rep.K;
    const bool b0_zero = piv.b0.is_zero();

    if (piv.constant_inner) {
        // f = b*I within the truncation; the single series sum g_n b^n decides.
        rep.special_case = SpecialCase::ConstantInner;
        rep.note = "inner series is constant within the truncation";
        rep.certified_all_degrees = true;

        // A list outer makes sum g_n b^n a finite sum: exact when b is.
        if (rep.b0.exact && g.as_list()) {
            const auto& items = *g.as_list();
            Rational value(0);
            for (auto it = items.rbegin(); it != items.rend(); ++it)
                value = value * *rep.b0.exact + *it;
            ConvergenceVerdict v = ConvergenceVerdict::exact(value);
            v.regime = "exact (polynomial outer)";
            v.terms_used = static_cast<long>(items.size());
            rep.G.push_back(v);
            if (want_result) {
                rep.result = ExactSeries::constant(rep.q, K, value);
                rep.residual = 0.0;  // the direct partial sum is the same finite sum
            }
            return rep;
        }

        ConvergenceVerdict v = g_shifted_sum(g, rep.b0.approx, 0, opts.verdict);
        rep.G.push_back(v);
        if (!v.converged()) {
            rep.first_failure = 0;
            return rep;
        }
        if (want_result) {
            if (any_is_exact(f) && v.exact_value) {
                rep.result = ExactSeries::constant(rep.q, K, *v.exact_value);
            } else {
                if (any_is_exact(f))
                    rep.note += "; result demoted to binary64 (limit value is numeric)";
                rep.result = NumericSeries::constant(rep.q, K, v.value);
            }
            // Residual against the direct partial sum of g_n b0^n.
            double direct = 0.0, pw = 1.0;
            for (int n = 0; n <= opts.check_depth; ++n) {
                direct += g.coeff_double(n) * pw;
                pw *= rep.b0.approx;
            }
            rep.residual = std::fabs(v.value - direct);
        }
        return rep;
    }

    if (b0_zero) {
        // q-nonunit inner: G_s = g_s exactly; h[k] is a finite exact sum.
        rep.special_case = SpecialCase::NonunitInner;
        rep.certified_all_degrees = true;
        rep.note = "nonunit inner series: composition exists unconditionally";
        for (long s = 0; s <= K; ++s) rep.G.push_back(g_shifted_sum(g, 0.0, s, opts.verdict));
        if (!want_result) return rep;

        if (any_is_exact(f) && g.exact_capable()) {
            const auto& fe = std::get<ExactSeries>(f);
            BlockPowerCache<Rational> cache(fe);
            DTable<Rational> dt = d_table(fe, K, cache);
            std::vector<Rational> gv;
            for (long s = 0; s <= K; ++s) gv.push_back(*g.coeff_exact(s));
            ExactSeries h = assemble<Rational>(rep.q, K, gv, dt);
            const int depth = std::max(opts.check_depth, K);
            ExactSeries direct = direct_partial<Rational>(
                fe, [&g](int n) { return *g.coeff_exact(n); }, depth);
            rep.residual = max_abs_diff(h, direct);
            rep.result = std::move(h);
            return rep;
        }

        NumericSeries fd = std::visit([](const auto& s) { return to_binary64(s); }, f);
        if (any_is_exact(f))
            rep.note += "; result demoted to binary64 (outer rule is not exactly evaluable)";
        BlockPowerCache<double> cache(fd);
        DTable<double> dt = d_table(fd, K, cache);
        std::vector<double> gv;
        for (long s = 0; s <= K; ++s) gv.push_back(g.coeff_double(s));
        NumericSeries h = assemble<double>(rep.q, K, gv, dt);
        const int depth = std::max(opts.check_depth, K);
        NumericSeries direct =
            direct_partial<double>(fd, [&g](int n) { return g.coeff_double(n); }, depth);
        rep.residual = max_abs_diff(h, direct);
        rep.result = std::move(h);
        return rep;
    }

    // General pivot: verdicts G_0..G_K; result only if all converge.
    for (long s = 0; s <= K; ++s) {
        rep.G.push_back(g_shifted_sum(g, rep.b0.approx, s, opts.verdict));
        if (!rep.G.back().converged() && !rep.first_failure) rep.first_failure = static_cast<int>(s);
    }
    rep.certified_all_degrees =
        g.radius() && std::fabs(rep.b0.approx) < g.radius()->value;
    rep.note = rep.certified_all_degrees
                   ? "existence certified for all degrees (radius path)"
                   : "existence checked for s <= K only; the criterion quantifies over all k";
    if (!rep.exists() || !want_result) return rep;

    NumericSeries fd = std::visit([](const auto& s) { return to_binary64(s); }, f);
    if (any_is_exact(f))
        rep.note += "; result demoted to binary64 (G_s values are numeric limits)";
    BlockPowerCache<double> cache(fd);
    DTable<double> dt = d_table(fd, K, cache);
    std::vector<double> gv;
    for (const auto& v : rep.G) gv.push_back(v.value);
    NumericSeries h = assemble<double>(rep.q, K, gv, dt);
    NumericSeries direct =
        direct_partial<double>(fd, [&g](int n) { return g.coeff_double(n); }, opts.check_depth);
    rep.residual = max_abs_diff(h, direct);
    rep.result = std::move(h);
    return rep;
}

}  // namespace

CompositionReport compose(const CoeffSequence& g, const AnySeries& f, const ComposeOptions& opts) {
    return run_compose(g, f, opts, true);
}

CompositionReport existence_check(const CoeffSequence& g, const AnySeries& f,
                                  const ComposeOptions& opts) {
    return run_compose(g, f, opts, false);
}

}  // namespace fps
