#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "fps/sequence.hpp"
#include "test_support.hpp"

using namespace fps;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("parse_rule: the counterexample sequence") {
    auto g = parse_rule("(-1)^n / sqrt(n+1)");
    CHECK(g.coeff_double(0) == doctest::Approx(1.0));
    CHECK(g.coeff_double(1) == doctest::Approx(-0.70710678118654752));
    CHECK(g.coeff_double(3) == doctest::Approx(-0.5));
    REQUIRE(g.radius().has_value());
    CHECK(g.radius()->value == 1.0);
    CHECK_FALSE(g.radius()->user_asserted);
    CHECK_FALSE(g.exact_capable());
    CHECK_FALSE(g.coeff_exact(2).has_value());
}

TEST_CASE("parse_rule: reciprocal factorial") {
    auto g = parse_rule("1/fact(n)");
    REQUIRE(g.radius().has_value());
    CHECK(std::isinf(g.radius()->value));
    CHECK(g.exact_capable());
    CHECK(*g.coeff_exact(0) == Rational(1));
    CHECK(*g.coeff_exact(4) == Rational(1, 24));
    CHECK(g.coeff_double(200) == 0.0);  // 200! overflows binary64, coefficient underflows
}

TEST_CASE("parse_rule: constants and geometric rules") {
    auto ones = parse_rule("1");
    REQUIRE(ones.radius().has_value());
    CHECK(ones.radius()->value == 1.0);
    CHECK(*ones.coeff_exact(17) == Rational(1));

    auto half = parse_rule("(1/2)^n");
    REQUIRE(half.radius().has_value());
    CHECK(half.radius()->value == doctest::Approx(2.0));
    CHECK(*half.coeff_exact(3) == Rational(1, 8));

    auto two = parse_rule("2^n");
    REQUIRE(two.radius().has_value());
    CHECK(two.radius()->value == doctest::Approx(0.5));

    auto fact = parse_rule("fact(n)");
    REQUIRE(fact.radius().has_value());
    CHECK(fact.radius()->value == 0.0);
}

TEST_CASE("parse_rule: polynomial rules get radius 1, zero rules get infinity") {
    auto poly = parse_rule("(n+1)*(n+2)/2");
    REQUIRE(poly.radius().has_value());
    CHECK(poly.radius()->value == 1.0);
    CHECK(*poly.coeff_exact(3) == Rational(10));

    auto zero = parse_rule("n - n");
    REQUIRE(zero.radius().has_value());
    CHECK(std::isinf(zero.radius()->value));

    auto alt_harmonic = parse_rule("(-1)^n/(n+1)");
    REQUIRE(alt_harmonic.radius().has_value());
    CHECK(alt_harmonic.radius()->value == 1.0);
    CHECK(*alt_harmonic.coeff_exact(1) == Rational(-1, 2));
}

TEST_CASE("parse_rule: out-of-catalog shapes carry no hint") {
    CHECK_FALSE(parse_rule("n^n").radius().has_value());
    CHECK_FALSE(parse_rule("2^n + 1").radius().has_value());
    CHECK_FALSE(parse_rule("fact(n)/fact(n)").radius().has_value());
}

TEST_CASE("parse_rule: syntax errors carry a position") {
    auto pos_of = [](const std::string& text) {
        try {
            parse_rule(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position);
        }
        return -1L;
    };
    CHECK(pos_of("1+") >= 1);
    CHECK(pos_of("sqrt(2") >= 5);
    CHECK(pos_of("2^(3)") == 2);  // exponent must be an integer constant or n
    CHECK(pos_of("1//2") >= 2);
    CHECK(pos_of("foo(n)") == 0);
    CHECK(pos_of(")") == 0);
    CHECK(pos_of("") == 0);
    CHECK(pos_of("1 + 2)") >= 5);

    // allowed shapes
    CHECK_NOTHROW(parse_rule("n^n"));
    CHECK_NOTHROW(parse_rule("sqrt(n+1)^2"));
    CHECK_NOTHROW(parse_rule(" ( -1 ) ^ n * 3 "));
}

TEST_CASE("rule evaluation errors surface at coeff_at with the offending n") {
    auto inv = parse_rule("1/n");
    CHECK_THROWS_WITH_AS(inv.coeff_double(0), doctest::Contains("n=0"), EvalError);
    CHECK(inv.coeff_double(2) == doctest::Approx(0.5));

    auto negsqrt = parse_rule("sqrt(0-n-1)");
    CHECK_THROWS_AS(negsqrt.coeff_double(0), EvalError);

    auto halfint = parse_rule("fact(n/2)");
    CHECK_THROWS_AS(halfint.coeff_double(1), EvalError);
    CHECK(halfint.coeff_double(4) == doctest::Approx(2.0));
}

TEST_CASE("coeff_at: lists zero-extend; evaluation is pure") {
    auto P = CoeffSequence::from_list({Rational(1)});
    CHECK(*P.coeff_exact(0) == Rational(1));
    CHECK(*P.coeff_exact(1) == Rational(0));
    CHECK(*P.coeff_exact(1000) == Rational(0));
    REQUIRE(P.radius().has_value());
    CHECK(std::isinf(P.radius()->value));  // finite list: polynomial outer series

    auto g = parse_rule("(-1)^n/sqrt(n+1)");
    const double a = g.coeff_double(12345);
    const double b = g.coeff_double(12345);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("user-asserted radius overrides the derived hint") {
    auto g = parse_rule("1");
    g.assert_radius(2.5);
    REQUIRE(g.radius().has_value());
    CHECK(g.radius()->value == 2.5);
    CHECK(g.radius()->user_asserted);
    CHECK_THROWS_AS(g.assert_radius(-1.0), std::invalid_argument);
}

TEST_CASE("cauchy_seq_product: examples") {
    auto a = CoeffSequence::from_list({Rational(1), Rational(1)});
    auto c = cauchy_seq_product(a, a);
    CHECK(*c.coeff_exact(0) == Rational(1));
    CHECK(*c.coeff_exact(1) == Rational(2));
    CHECK(*c.coeff_exact(2) == Rational(1));
    CHECK(*c.coeff_exact(3) == Rational(0));

    auto ones = parse_rule("1");
    auto conv = cauchy_seq_product(ones, ones);
    for (long n = 0; n < 20; ++n) CHECK(*conv.coeff_exact(n) == Rational(n + 1));
    REQUIRE(conv.radius().has_value());
    CHECK(conv.radius()->value == 1.0);  // min of the inputs' hints
}

TEST_CASE("cauchy_seq_product: commutative and bilinear vs direct convolution") {
    std::mt19937 rng(23);
    for (int it = 0; it < 25; ++it) {
        std::vector<Rational> av, bv;
        std::uniform_int_distribution<int> len(1, 6);
        const int la = len(rng), lb = len(rng);
        for (int i = 0; i < la; ++i) av.push_back(fps::test::random_rational(rng));
        for (int i = 0; i < lb; ++i) bv.push_back(fps::test::random_rational(rng));
        auto a = CoeffSequence::from_list(av);
        auto b = CoeffSequence::from_list(bv);
        auto ab = cauchy_seq_product(a, b);
        auto ba = cauchy_seq_product(b, a);
        auto expect = fps::test::convolve(av, bv, 12);
        for (long n = 0; n < 12; ++n) {
            CHECK(*ab.coeff_exact(n) == expect[static_cast<std::size_t>(n)]);
            CHECK(*ba.coeff_exact(n) == expect[static_cast<std::size_t>(n)]);
        }

        // bilinearity in the first argument: (a + a') * b, via lists
        std::vector<Rational> av2 = av;
        for (auto& x : av2) x *= 3;
        auto a3 = CoeffSequence::from_list(av2);
        auto a3b = cauchy_seq_product(a3, b);
        for (long n = 0; n < 12; ++n)
            CHECK(*a3b.coeff_exact(n) == 3 * expect[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("cauchy square of the counterexample: terms bounded below") {
    auto a = parse_rule("(-1)^n/sqrt(n+1)");
    auto c = cauchy_seq_product(a, a);
    for (long n = 0; n <= 400; ++n) {
        const double lower = 2.0 * static_cast<double>(n + 1) / static_cast<double>(n + 2);
        CHECK(std::fabs(c.coeff_double(n)) >= lower - 1e-12);
    }
    REQUIRE(c.radius().has_value());
    CHECK(c.radius()->value == 1.0);
    CHECK_FALSE(c.exact_capable());
}

TEST_CASE("products of exact sequences stay exact") {
    auto g = cauchy_seq_product(parse_rule("1/fact(n)"), CoeffSequence::from_list({Rational(1), Rational(2)}));
    REQUIRE(g.exact_capable());
    // c_2 = 1/2 * 1 + 1 * 2 = 5/2
    CHECK(*g.coeff_exact(2) == Rational(5, 2));
}
