#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fps/sequence.hpp"
#include "fps/verdict.hpp"

using namespace fps;
using Kind = ConvergenceVerdict::Kind;

namespace {

std::function<double(long)> terms_of(const CoeffSequence& g) {
    return [g](long n) { return g.coeff_double(n); };
}

// Labeled corpus for the soundness and monotonicity checks.  `borderline`
// members may come back Inconclusive; the others must classify correctly.
struct CorpusEntry {
    std::string name;
    std::function<double(long)> term;
    bool convergent;
    bool borderline;
};

std::vector<CorpusEntry> corpus() {
    return {
        {"geometric (1/2)^n", [](long n) { return std::pow(0.5, static_cast<double>(n)); },
         true, false},
        {"alternating 1/sqrt(n+1)",
         [](long n) { return (n % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n + 1)); },
         true, false},
        {"reciprocal factorial", terms_of(parse_rule("1/fact(n)")), true, false},
        {"alternating harmonic",
         [](long n) { return (n % 2 ? -1.0 : 1.0) / static_cast<double>(n + 1); }, true, false},
        {"n * 0.9^n",
         [](long n) { return static_cast<double>(n) * std::pow(0.9, static_cast<double>(n)); },
         true, false},
        {"finite list", terms_of(CoeffSequence::from_list({Rational(3), Rational(-2), Rational(5)})),
         true, false},
        {"all ones", [](long) { return 1.0; }, false, false},
        {"alternating unit", [](long n) { return n % 2 ? -1.0 : 1.0; }, false, false},
        {"linear growth", [](long n) { return static_cast<double>(n); }, false, false},
        {"geometric 1.01^n", [](long n) { return std::pow(1.01, static_cast<double>(n)); },
         false, false},
        {"n/(n+1)", [](long n) { return static_cast<double>(n) / static_cast<double>(n + 1); },
         false, false},
        {"counterexample Cauchy square",
         terms_of(cauchy_seq_product(parse_rule("(-1)^n/sqrt(n+1)"),
                                     parse_rule("(-1)^n/sqrt(n+1)"))),
         false, false},
        // designated borderline members: slow monotone tails, no usable regime
        {"harmonic", [](long n) { return 1.0 / static_cast<double>(n + 1); }, false, true},
        {"1/(n+1)^2",
         [](long n) { return 1.0 / (static_cast<double>(n + 1) * static_cast<double>(n + 1)); },
         true, true},
    };
}

VerdictOptions quick_opts(long n_max = 1L << 14) {
    VerdictOptions o;
    o.n_max = n_max;
    return o;
}

}  // namespace

TEST_CASE("geometric series converges to 2 under tolerance") {
    auto v = partial_sum_verdict([](long n) { return std::pow(0.5, static_cast<double>(n)); },
                                 VerdictOptions{});
    REQUIRE(v.kind == Kind::Converged);
    CHECK(v.error_bound <= 1e-9);
    CHECK(std::fabs(v.value - 2.0) <= 1e-9);
    CHECK(v.regime == "ratio");
}

TEST_CASE("alternating 1/sqrt(n+1): converged with the alternating bound") {
    VerdictOptions o;  // N_max = 2^20
    auto v = partial_sum_verdict(
        [](long n) { return (n % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n + 1)); }, o);
    REQUIRE(v.kind == Kind::Converged);
    CHECK(v.regime == "alternating (tolerance not reached)");
    CHECK(std::fabs(v.value - 0.604899) <= v.error_bound);
    CHECK(v.error_bound <= 1.0 / std::sqrt(static_cast<double>(o.n_max)));
}

TEST_CASE("terms that do not vanish yield Diverged with a witness") {
    auto v = partial_sum_verdict([](long n) { return static_cast<double>(n); }, quick_opts());
    REQUIRE(v.kind == Kind::Diverged);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->reason == "terms not vanishing");
}

TEST_CASE("overflow guard yields Diverged before the window fills") {
    auto v = partial_sum_verdict(
        [](long n) { return std::pow(10.0, 2.0 * static_cast<double>(n)); }, quick_opts());
    REQUIRE(v.kind == Kind::Diverged);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->reason.find("overflow") != std::string::npos);
    CHECK(v.witness->n_end < 64);

    // slower growth is caught by the non-vanishing window instead
    auto w = partial_sum_verdict([](long n) { return std::pow(10.0, static_cast<double>(n)); },
                                 quick_opts());
    REQUIRE(w.kind == Kind::Diverged);
}

TEST_CASE("finite series: exact-tail verdict, rounding-level bound") {
    auto v = partial_sum_verdict(
        terms_of(CoeffSequence::from_list({Rational(3), Rational(-2), Rational(5)})), quick_opts());
    REQUIRE(v.kind == Kind::Converged);
    CHECK(v.value == 6.0);
    CHECK(v.error_bound <= 1e-12);  // only the summation rounding allowance
    CHECK(v.regime == "exact");
}

TEST_CASE("NaN terms yield Inconclusive, not an exception") {
    auto v = partial_sum_verdict(
        [](long n) { return n == 10 ? std::nan("") : std::pow(0.5, static_cast<double>(n)); },
        quick_opts());
    CHECK(v.kind == Kind::Inconclusive);
}

TEST_CASE("option preconditions") {
    VerdictOptions bad;
    bad.n_max = 8;
    CHECK_THROWS_AS(partial_sum_verdict([](long) { return 0.0; }, bad), std::invalid_argument);
    VerdictOptions bad2;
    bad2.tolerance = 0.0;
    CHECK_THROWS_AS(partial_sum_verdict([](long) { return 0.0; }, bad2), std::invalid_argument);
}

TEST_CASE("corpus soundness: no misclassification, Inconclusive only on borderline") {
    for (const auto& entry : corpus()) {
        auto v = partial_sum_verdict(entry.term, quick_opts(1L << 16));
        INFO(entry.name, " -> ", to_string(v.kind));
        if (entry.borderline) {
            // may be Inconclusive, but must never land on the wrong side
            if (v.kind == Kind::Converged) CHECK(entry.convergent);
            if (v.kind == Kind::Diverged) CHECK_FALSE(entry.convergent);
        } else if (entry.convergent) {
            CHECK(v.kind == Kind::Converged);
        } else {
            CHECK(v.kind == Kind::Diverged);
        }
    }
}

TEST_CASE("verdict monotonicity: larger budgets never flip Converged <-> Diverged") {
    for (const auto& entry : corpus()) {
        Kind prev = Kind::Inconclusive;
        bool seen_decided = false;
        for (long nmax : {1L << 10, 1L << 12, 1L << 14, 1L << 16}) {
            auto v = partial_sum_verdict(entry.term, quick_opts(nmax));
            if (seen_decided && v.kind != Kind::Inconclusive) {
                INFO(entry.name, " at N_max=", nmax);
                CHECK(v.kind == prev);
            }
            if (v.kind != Kind::Inconclusive) {
                prev = v.kind;
                seen_decided = true;
            }
        }
    }
}

TEST_CASE("certified_sum promotes Inconclusive but keeps overflow divergence") {
    // 1/(n+1)^2 has no usable window regime; under a radius certificate the
    // verdict must still come back Converged.
    auto v = certified_sum(
        [](long n) { return 1.0 / (static_cast<double>(n + 1) * static_cast<double>(n + 1)); },
        quick_opts(1L << 14));
    REQUIRE(v.kind == Kind::Converged);
    CHECK(v.regime.rfind("radius", 0) == 0);
    // pi^2/6, within the (weak) reported bound
    CHECK(std::fabs(v.value - 1.6449340668) <= v.error_bound + 1e-4);

    auto w = certified_sum([](long n) { return std::pow(10.0, static_cast<double>(n)); },
                           quick_opts());
    CHECK(w.kind == Kind::Diverged);  // numeric contradiction wins
}

TEST_CASE("converged values sit within their bounds of the true limits") {
    struct Known {
        std::string name;
        std::function<double(long)> term;
        double limit;
        bool certified;  // run through certified_sum (radius path)
    };
    // (1-sqrt(2))*zeta(1/2) for the alternating sqrt series
    const double alt_sqrt = 0.6048986434216305;
    const std::vector<Known> known = {
        {"geometric", [](long n) { return std::pow(0.5, static_cast<double>(n)); }, 2.0, false},
        {"alternating sqrt",
         [](long n) { return (n % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n + 1)); },
         alt_sqrt, false},
        {"alternating harmonic",
         [](long n) { return (n % 2 ? -1.0 : 1.0) / static_cast<double>(n + 1); },
         std::numbers::ln2, false},
        {"exp(1) terms", [](long n) { return 1.0 / fps::factorial_double(n); },
         std::numbers::e, false},
        {"Basel series",
         [](long n) { return 1.0 / (static_cast<double>(n + 1) * static_cast<double>(n + 1)); },
         1.644934066848226436, true},
    };
    for (const auto& k : known) {
        auto v = k.certified ? certified_sum(k.term, quick_opts(1L << 16))
                             : partial_sum_verdict(k.term, quick_opts(1L << 16));
        INFO(k.name);
        REQUIRE(v.kind == Kind::Converged);
        CHECK(std::fabs(v.value - k.limit) <= v.error_bound);
    }
}

TEST_CASE("harmonic series stays undecided (honest Inconclusive)") {
    auto v = partial_sum_verdict([](long n) { return 1.0 / static_cast<double>(n + 1); },
                                 quick_opts(1L << 16));
    REQUIRE(v.kind == Kind::Inconclusive);
    REQUIRE(v.diagnostics.has_value());
    CHECK(v.diagnostics->last_partial > 1.0);
}
