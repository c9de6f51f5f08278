#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fps/multiindex.hpp"
#include "fps/scalar.hpp"
#include "test_support.hpp"

using namespace fps;

TEST_CASE("graded-lex: degree dominates, lex breaks ties") {
    CHECK(graded_lex_compare(MultiIndex{0, 1}, MultiIndex{1, 0}) == std::strong_ordering::less);
    CHECK(graded_lex_compare(MultiIndex{0, 0}, MultiIndex{0, 0}) == std::strong_ordering::equal);
    CHECK(graded_lex_compare(MultiIndex{2, 0}, MultiIndex{0, 3}) == std::strong_ordering::less);
    CHECK(graded_lex_compare(MultiIndex{0, 3}, MultiIndex{2, 0}) == std::strong_ordering::greater);
}

TEST_CASE("graded-lex: dimension mismatch is an error") {
    CHECK_THROWS_AS(graded_lex_compare(MultiIndex{1}, MultiIndex{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS((MultiIndex{1, 2} + MultiIndex{1}), std::invalid_argument);
}

TEST_CASE("graded-lex is a total order on random triples") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> e(0, 4);
    auto rand_idx = [&](int q) {
        std::vector<int> v(static_cast<std::size_t>(q));
        for (auto& x : v) x = e(rng);
        return MultiIndex(std::move(v));
    };
    for (int it = 0; it < 500; ++it) {
        const int q = 1 + it % 4;
        MultiIndex a = rand_idx(q), b = rand_idx(q), c = rand_idx(q);
        auto ab = graded_lex_compare(a, b);
        auto ba = graded_lex_compare(b, a);
        // antisymmetry
        CHECK((ab == std::strong_ordering::less) == (ba == std::strong_ordering::greater));
        CHECK((ab == std::strong_ordering::equal) == (ba == std::strong_ordering::equal));
        CHECK((ab == std::strong_ordering::equal) == (a == b));
        // transitivity
        if (graded_lex_compare(a, b) != std::strong_ordering::greater &&
            graded_lex_compare(b, c) != std::strong_ordering::greater)
            CHECK(graded_lex_compare(a, c) != std::strong_ordering::greater);
    }
}

TEST_CASE("enumerate_degree: examples") {
    auto d2 = enumerate_degree(2, 2);
    REQUIRE(d2.size() == 3);
    CHECK(d2[0] == MultiIndex{0, 2});
    CHECK(d2[1] == MultiIndex{1, 1});
    CHECK(d2[2] == MultiIndex{2, 0});

    CHECK(enumerate_degree(3, 2).size() == 6);

    auto d1 = enumerate_degree(1, 5);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == MultiIndex{5});
}

TEST_CASE("enumerate_degree: size C(q+k-1, q-1), sorted, degree-homogeneous") {
    for (int q = 1; q <= 4; ++q) {
        for (int k = 0; k <= 10; ++k) {
            auto slice = enumerate_degree(q, k);
            const BigInt expect = binomial(static_cast<unsigned long>(q + k - 1),
                                           static_cast<unsigned long>(q - 1));
            CHECK(BigInt(static_cast<long>(slice.size())) == expect);
            for (std::size_t i = 0; i < slice.size(); ++i) {
                CHECK(slice[i].total_degree() == k);
                if (i > 0)
                    CHECK(graded_lex_compare(slice[i - 1], slice[i]) ==
                          std::strong_ordering::less);
            }
        }
    }
}

TEST_CASE("enumerate_partitions: examples") {
    auto p42 = enumerate_partitions(4, 2);
    REQUIRE(p42.size() == 2);  // 3+1 and 2+2
    std::set<std::vector<int>> got;
    for (const auto& pv : p42) got.insert(pv.multiplicity);
    CHECK(got.count({1, 0, 1, 0}) == 1);
    CHECK(got.count({0, 2, 0, 0}) == 1);

    auto p33 = enumerate_partitions(3, 3);
    REQUIRE(p33.size() == 1);
    CHECK(p33[0].multiplicity == std::vector<int>{3, 0, 0});

    auto p21 = enumerate_partitions(2, 1);
    REQUIRE(p21.size() == 1);
    CHECK(p21[0].multiplicity == std::vector<int>{0, 1});

    CHECK(enumerate_partitions(3, 7).empty());  // s > k: empty, not an error
}

TEST_CASE("enumerate_partitions agrees with the full-lattice filter") {
    for (int k = 1; k <= 10; ++k) {
        for (int s = 1; s <= k; ++s) {
            auto fast = enumerate_partitions(k, s);
            auto brute = fps::test::partitions_by_lattice(k, s);
            CHECK(fast.size() == brute.size());
            std::set<std::vector<int>> fast_set, brute_set;
            for (const auto& pv : fast) {
                CHECK(pv.degree() == k);
                CHECK(pv.parts() == s);
                fast_set.insert(pv.multiplicity);
            }
            for (const auto& v : brute) brute_set.insert(v);
            CHECK(fast_set == brute_set);
        }
    }
}

TEST_CASE("split_pairs: examples") {
    auto p = split_pairs(MultiIndex{1, 1});
    REQUIRE(p.size() == 4);
    CHECK(p[0].first == MultiIndex{0, 0});
    CHECK(p[0].second == MultiIndex{1, 1});
    CHECK(p[1].first == MultiIndex{0, 1});
    CHECK(p[1].second == MultiIndex{1, 0});
    CHECK(p[2].first == MultiIndex{1, 0});
    CHECK(p[2].second == MultiIndex{0, 1});
    CHECK(p[3].first == MultiIndex{1, 1});
    CHECK(p[3].second == MultiIndex{0, 0});

    auto z = split_pairs(MultiIndex{0, 0});
    REQUIRE(z.size() == 1);
    CHECK(z[0].first == MultiIndex{0, 0});

    CHECK(split_pairs(MultiIndex{2}).size() == 3);
}

TEST_CASE("split_pairs: exact splits, no duplicates, graded-lex order") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> e(0, 3);
    for (int it = 0; it < 100; ++it) {
        const int q = 1 + it % 3;
        std::vector<int> v(static_cast<std::size_t>(q));
        for (auto& x : v) x = e(rng);
        MultiIndex c(v);
        auto pairs = split_pairs(c);
        long expect = 1;
        for (int i = 0; i < q; ++i) expect *= c[i] + 1;
        CHECK(static_cast<long>(pairs.size()) == expect);
        std::set<std::vector<int>> seen;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [a, b] = pairs[i];
            CHECK(a + b == c);
            CHECK(a.dominated_by(c));
            CHECK(b.dominated_by(c));
            CHECK(seen.insert(a.exponents()).second);
            if (i > 0)
                CHECK(graded_lex_compare(pairs[i - 1].first, a) == std::strong_ordering::less);
        }
    }
}

TEST_CASE("multi-index basics") {
    CHECK(MultiIndex::zero(3).total_degree() == 0);
    CHECK(MultiIndex{1, 2, 3}.total_degree() == 6);
    CHECK_THROWS_AS(MultiIndex(std::vector<int>{1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(MultiIndex::zero(0), std::invalid_argument);
    CHECK(to_string(MultiIndex{1, 0, 2}) == "(1,0,2)");
}
