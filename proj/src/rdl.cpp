#include "fps/rdl.hpp"

#include <cmath>

namespace fps {

const char* to_string(RdlStatus s) {
    switch (s) {
        case RdlStatus::Holds: return "Holds";
        case RdlStatus::RhsNotExists: return "RhsNotExists";
        case RdlStatus::LhsNotExists: return "LhsNotExists";
        case RdlStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

std::string failure_detail(const CompositionReport& r, const char* who) {
    std::string d = std::string(who) + " fails";
    if (r.first_failure) {
        d += " at G_" + std::to_string(*r.first_failure);
        const auto& v = r.G[static_cast<std::size_t>(*r.first_failure)];
        if (v.witness) d += " (" + v.witness->reason + ")";
    }
    return d;
}

// Structural order on numeric series, used to pick a canonical operand order
// for the binary64 product: mul's summation order then cannot depend on
// whether the caller passed (A,B) or (B,A).
bool series_before(const NumericSeries& a, const NumericSeries& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        const auto cmp = graded_lex_compare(ia->first, ib->first);
        if (cmp != std::strong_ordering::equal) return cmp == std::strong_ordering::less;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

}  // namespace

RdlReport rdl_verify(const CoeffSequence& A, const CoeffSequence& B, const AnySeries& P,
                     const RdlOptions& opts) {
    RdlReport rep;
    rep.q = any_vars(P);
    rep.K = any_truncation(P);

    rep.a_of_p = compose(A, P, opts.compose);
    rep.b_of_p = compose(B, P, opts.compose);

    const CoeffSequence AB = cauchy_seq_product(A, B);
    ComposeOptions rhs_opts = opts.compose;
    rhs_opts.verdict.n_max = opts.nmax_product;
    rep.ab_of_p = compose(AB, P, rhs_opts);

    // Any Inconclusive verdict anywhere makes the whole report Inconclusive;
    // it is never escalated to Holds or to a refutation.
    if (rep.a_of_p.any_inconclusive() || rep.b_of_p.any_inconclusive() ||
        rep.ab_of_p.any_inconclusive()) {
        rep.status = RdlStatus::Inconclusive;
        rep.detail = "a verdict was Inconclusive";
        return rep;
    }
    if (!rep.a_of_p.exists() || !rep.b_of_p.exists()) {
        rep.status = RdlStatus::LhsNotExists;
        rep.detail = !rep.a_of_p.exists() ? failure_detail(rep.a_of_p, "A∘P")
                                          : failure_detail(rep.b_of_p, "B∘P");
        return rep;
    }
    if (!rep.ab_of_p.exists()) {
        rep.status = RdlStatus::RhsNotExists;
        rep.detail = failure_detail(rep.ab_of_p, "(AB)∘P");
        return rep;
    }

    // All three exist: compare (A∘P)(B∘P) with (AB)∘P coefficientwise.
    const AnySeries& ra = *rep.a_of_p.result;
    const AnySeries& rb = *rep.b_of_p.result;
    const AnySeries& rc = *rep.ab_of_p.result;
    double disc = 0.0;
    if (any_is_exact(ra) && any_is_exact(rb) && any_is_exact(rc)) {
        ExactSeries prod = mul(std::get<ExactSeries>(ra), std::get<ExactSeries>(rb));
        disc = max_abs_diff(prod, std::get<ExactSeries>(rc));
        rep.lhs_product = std::move(prod);
    } else {
        auto as_num = [](const AnySeries& s) {
            return std::visit([](const auto& x) { return to_binary64(x); }, s);
        };
        NumericSeries na = as_num(ra), nb = as_num(rb);
        NumericSeries prod = series_before(nb, na) ? mul(nb, na) : mul(na, nb);
        disc = max_abs_diff(prod, as_num(rc));
        rep.lhs_product = std::move(prod);
    }
    rep.max_discrepancy = disc;
    if (disc <= opts.tolerance) {
        rep.status = RdlStatus::Holds;
    } else {
        // All three converged, so the law must hold; a larger discrepancy
        // signals numeric error beyond tolerance, not a refutation.
        rep.status = RdlStatus::Inconclusive;
        rep.detail = "discrepancy " + format_scalar(disc) + " exceeds tolerance";
    }
    return rep;
}

CounterexampleReport counterexample_demo(long n_terms, const RdlOptions& opts) {
    if (n_terms < 100)
        throw std::invalid_argument("counterexample_demo: need at least 100 terms");

    CounterexampleReport rep;
    rep.n_terms = n_terms;

    const CoeffSequence A = parse_rule("(-1)^n / sqrt(n+1)");

    // Partial sums of sum (-1)^n/sqrt(n+1) at decade checkpoints, each with
    // the alternating-series remainder bound.
    double s = 0.0;
    long next_checkpoint = 10;
    for (long n = 0; n <= n_terms; ++n) {
        s += A.coeff_double(n);
        if (n + 1 == next_checkpoint || n == n_terms) {
            rep.checkpoints.push_back({n + 1, s, 1.0 / std::sqrt(static_cast<double>(n + 2))});
            next_checkpoint *= 10;
        }
    }
    rep.final_value = rep.checkpoints.back().partial_sum;
    rep.final_bound = rep.checkpoints.back().bound;

    // Cauchy-square terms c_n with the certified lower bound
    // |c_n| >= 2(n+1)/(n+2) from (k+1)(n-k+1) <= ((n+2)/2)^2.
    std::vector<double> a(static_cast<std::size_t>(n_terms) + 1);
    for (long n = 0; n <= n_terms; ++n) a[static_cast<std::size_t>(n)] = A.coeff_double(n);
    rep.min_margin = HUGE_VAL;
    for (long n = 0; n <= n_terms; ++n) {
        double c = 0.0;
        for (long k = 0; k <= n; ++k)
            c += a[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(n - k)];
        const double margin =
            std::fabs(c) - 2.0 * static_cast<double>(n + 1) / static_cast<double>(n + 2);
        if (margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.margin_argmin = n;
        }
        if (n == n_terms) rep.sample_c_n = std::fabs(c);
    }
    rep.lower_bound_ok = rep.min_margin >= 0.0;

    // P = (1,0,0,...) = I as a 1-variable series.
    AnySeries P = NumericSeries::identity(1, 2);
    rep.rdl = rdl_verify(A, A, P, opts);
    return rep;
}

AbelReport abel_check(const CoeffSequence& a, const CoeffSequence& b, const RdlOptions& opts) {
    AbelReport rep;
    AnySeries P = NumericSeries::identity(1, 0);
    rep.rdl = rdl_verify(a, b, P, opts);

    rep.sum_a = rep.rdl.a_of_p.G.at(0);
    rep.sum_b = rep.rdl.b_of_p.G.at(0);
    rep.sum_c = rep.rdl.ab_of_p.G.at(0);

    if (!rep.sum_a.converged() || !rep.sum_b.converged() || !rep.sum_c.converged()) {
        rep.applicable = false;
        rep.detail = !rep.sum_a.converged()   ? "sum a did not converge"
                     : !rep.sum_b.converged() ? "sum b did not converge"
                                              : "sum c (Cauchy product) did not converge";
        return rep;
    }
    rep.applicable = true;
    const double Sa = rep.sum_a.value, Sb = rep.sum_b.value, Sc = rep.sum_c.value;
    const double da = rep.sum_a.error_bound, db = rep.sum_b.error_bound,
                 dc = rep.sum_c.error_bound;
    rep.product_value = Sa * Sb;
    rep.combined_bound = da * std::fabs(Sb) + std::fabs(Sa) * db + da * db + dc;
    rep.discrepancy = std::fabs(rep.product_value - Sc);
    rep.consistent = rep.discrepancy <= rep.combined_bound;
    return rep;
}

}  // namespace fps
