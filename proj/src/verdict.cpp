#include "fps/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fps {

ConvergenceVerdict ConvergenceVerdict::exact(Rational v) {
    ConvergenceVerdict r;
    r.kind = Kind::Converged;
    r.value = v.get_d();
    r.error_bound = 0.0;
    r.exact_value = std::move(v);
    r.regime = "exact";
    r.terms_used = 1;
    return r;
}

ConvergenceVerdict ConvergenceVerdict::converged_numeric(double v, double bound,
                                                         std::string regime, long terms) {
    ConvergenceVerdict r;
    r.kind = Kind::Converged;
    r.value = v;
    r.error_bound = bound;
    r.regime = std::move(regime);
    r.terms_used = terms;
    return r;
}

ConvergenceVerdict ConvergenceVerdict::diverged_with(DivergenceWitness w, long terms) {
    ConvergenceVerdict r;
    r.kind = Kind::Diverged;
    r.witness = std::move(w);
    r.terms_used = terms;
    return r;
}

ConvergenceVerdict ConvergenceVerdict::inconclusive_with(InconclusiveDiagnostics d,
                                                         std::string note) {
    ConvergenceVerdict r;
    r.kind = Kind::Inconclusive;
    r.diagnostics = d;
    r.regime = std::move(note);
    r.terms_used = d.terms_used;
    return r;
}

const char* to_string(ConvergenceVerdict::Kind k) {
    switch (k) {
        case ConvergenceVerdict::Kind::Converged: return "Converged";
        case ConvergenceVerdict::Kind::Diverged: return "Diverged";
        case ConvergenceVerdict::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

struct WindowStats {
    bool all_zero = false;
    bool alternating = false;      // strict sign alternation, |t| nonincreasing
    bool strictly_decreased = false;  // |t_last| < |t_first|
    bool ratio_ok = false;         // every |t_{i+1}/t_i| <= rho < 1
    double rho = 0.0;
    bool nonvanishing = false;     // min |t| >= floor and |t| not shrinking
    double min_abs = 0.0, max_abs = 0.0;
};

WindowStats analyze_window(const std::vector<double>& w, double vanish_floor) {
    WindowStats st;
    st.all_zero = true;
    st.alternating = true;
    st.ratio_ok = true;
    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    double rho = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double t = w[i];
        const double a = std::fabs(t);
        min_abs = std::min(min_abs, a);
        max_abs = std::max(max_abs, a);
        if (t != 0.0) st.all_zero = false;
        if (i > 0) {
            const double prev = w[i - 1];
            const double ap = std::fabs(prev);
            if (!(t * prev < 0.0) || a > ap) st.alternating = false;
            if (ap == 0.0) {
                if (a != 0.0) st.ratio_ok = false;  // 0 -> nonzero: no ratio bound
            } else {
                rho = std::max(rho, a / ap);
            }
        }
    }
    if (rho >= 1.0) st.ratio_ok = false;
    st.rho = rho;
    st.min_abs = min_abs;
    st.max_abs = max_abs;
    st.strictly_decreased = std::fabs(w.back()) < std::fabs(w.front());
    st.nonvanishing = min_abs >= vanish_floor && std::fabs(w.back()) >= std::fabs(w.front());
    if (st.all_zero) {
        st.alternating = false;
        st.ratio_ok = false;
    }
    return st;
}

ConvergenceVerdict run_sum(const std::function<double(long)>& term, const VerdictOptions& o,
                           bool certified) {
    if (!(o.tolerance > 0)) throw std::invalid_argument("verdict: tolerance must be > 0");
    if (o.n_max < 16) throw std::invalid_argument("verdict: N_max must be >= 16");
    if (o.window < 8) throw std::invalid_argument("verdict: window must be >= 8");

    const long W = o.window;
    const long stride = std::max<long>(1, W / 2);
    std::vector<double> ring(static_cast<std::size_t>(W), 0.0);
    std::vector<double> psums(static_cast<std::size_t>(W), 0.0);

    double s = 0.0;
    double last_t = 0.0;
    double peak = 0.0;  // max |partial sum|, for the rounding allowance
    long n = 0;
    // Summation of n+1 doubles can carry ~ (n+1) eps max|S| of rounding; every
    // claimed bound includes it so that |reported - limit| <= bound survives
    // floating point, not just truncation.
    const auto rounding = [&](long upto) {
        return static_cast<double>(upto + 1) * std::numeric_limits<double>::epsilon() * peak;
    };
    for (; n <= o.n_max; ++n) {
        double t = term(n);
        if (std::isnan(t)) {
            return ConvergenceVerdict::inconclusive_with(
                InconclusiveDiagnostics{s, 0.0, n}, "term evaluated to NaN");
        }
        if (!std::isfinite(t) || std::fabs(t) > o.overflow_guard) {
            return ConvergenceVerdict::diverged_with(
                DivergenceWitness{"terms exceed overflow guard", n, n, std::fabs(t)}, n + 1);
        }
        s += t;
        last_t = t;
        peak = std::max(peak, std::fabs(s));
        if (std::fabs(s) > o.overflow_guard) {
            return ConvergenceVerdict::diverged_with(
                DivergenceWitness{"partial sums exceed overflow guard", 0, n, s}, n + 1);
        }
        ring[static_cast<std::size_t>(n % W)] = t;
        psums[static_cast<std::size_t>(n % W)] = s;

        if (n >= W - 1 && ((n + 1) % stride == 0)) {
            // in-order copy of the last W terms
            std::vector<double> w(static_cast<std::size_t>(W));
            for (long i = 0; i < W; ++i)
                w[static_cast<std::size_t>(i)] =
                    ring[static_cast<std::size_t>((n - W + 1 + i) % W)];
            const WindowStats st = analyze_window(w, o.vanish_floor);
            const double at = std::fabs(last_t);
            if (st.all_zero)
                return ConvergenceVerdict::converged_numeric(s, rounding(n), "exact", n + 1);
            if (st.alternating && st.strictly_decreased && at <= o.tolerance)
                return ConvergenceVerdict::converged_numeric(s, at + rounding(n), "alternating",
                                                             n + 1);
            if (st.ratio_ok) {
                const double bound = at * st.rho / (1.0 - st.rho) + rounding(n);
                if (bound <= o.tolerance)
                    return ConvergenceVerdict::converged_numeric(s, bound, "ratio", n + 1);
            }
            if (!certified && st.nonvanishing)
                return ConvergenceVerdict::diverged_with(
                    DivergenceWitness{"terms not vanishing", n - W + 1, n, st.min_abs}, n + 1);
        }
    }
    n = o.n_max;

    // Exhausted the budget: report the best regime seen in the final window,
    // with an honest (possibly large) bound.
    const long have = std::min<long>(W, n + 1);
    std::vector<double> w(static_cast<std::size_t>(have));
    for (long i = 0; i < have; ++i)
        w[static_cast<std::size_t>(i)] = ring[static_cast<std::size_t>((n - have + 1 + i) % W)];
    if (have >= 8) {
        const WindowStats st = analyze_window(w, o.vanish_floor);
        const double at = std::fabs(last_t);
        if (st.all_zero)
            return ConvergenceVerdict::converged_numeric(s, rounding(n), "exact", n + 1);
        if (st.alternating && st.strictly_decreased)
            return ConvergenceVerdict::converged_numeric(
                s, at + rounding(n), "alternating (tolerance not reached)", n + 1);
        if (st.ratio_ok && st.rho <= o.rho_cap)
            return ConvergenceVerdict::converged_numeric(
                s, at * st.rho / (1.0 - st.rho) + rounding(n), "ratio (tolerance not reached)",
                n + 1);
        if (!certified && st.nonvanishing)
            return ConvergenceVerdict::diverged_with(
                DivergenceWitness{"terms not vanishing", n - have + 1, n, st.min_abs}, n + 1);
    }

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (long i = 0; i < have; ++i) {
        const double p = psums[static_cast<std::size_t>((n - have + 1 + i) % W)];
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    if (certified) {
        // Convergence is certified analytically; only the numeric bound is weak.
        return ConvergenceVerdict::converged_numeric(
            s, std::max(hi - lo, std::fabs(last_t)) + rounding(n),
            "radius (no numeric tail bound)", n + 1);
    }
    return ConvergenceVerdict::inconclusive_with(
        InconclusiveDiagnostics{s, hi - lo, n + 1}, "no regime detected");
}

}  // namespace

ConvergenceVerdict partial_sum_verdict(const std::function<double(long)>& term,
                                       const VerdictOptions& opts) {
    return run_sum(term, opts, false);
}

ConvergenceVerdict certified_sum(const std::function<double(long)>& term,
                                 const VerdictOptions& opts) {
    ConvergenceVerdict v = run_sum(term, opts, true);
    if (v.kind == ConvergenceVerdict::Kind::Converged && v.regime != "exact" &&
        v.regime.rfind("radius", 0) != 0)
        v.regime = "radius+" + v.regime;
    return v;
}

}  // namespace fps
