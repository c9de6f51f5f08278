#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fps {

// Exponent vector c = (c_1,...,c_q) in N_0^q.  Immutable value type; q is
// carried on every index and validated at operation boundaries.
class MultiIndex {
public:
    MultiIndex() = default;

    explicit MultiIndex(std::vector<int> exponents) : exp_(std::move(exponents)) {
        for (int e : exp_) {
            if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
        }
    }

    MultiIndex(std::initializer_list<int> exponents) : MultiIndex(std::vector<int>(exponents)) {}

    static MultiIndex zero(int q) {
        if (q < 1) throw std::invalid_argument("MultiIndex: variable count must be >= 1");
        MultiIndex m;
        m.exp_.assign(static_cast<std::size_t>(q), 0);
        return m;
    }

    int dim() const { return static_cast<int>(exp_.size()); }

    int total_degree() const {
        int k = 0;
        for (int e : exp_) k += e;
        return k;
    }

    int operator[](int i) const { return exp_[static_cast<std::size_t>(i)]; }

    const std::vector<int>& exponents() const { return exp_; }

    bool operator==(const MultiIndex&) const = default;

    MultiIndex operator+(const MultiIndex& o) const {
        require_same_dim(o);
        MultiIndex r = *this;
        for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] += o.exp_[i];
        return r;
    }

    // Componentwise a <= c (the splitting order of the Cauchy product).
    bool dominated_by(const MultiIndex& c) const {
        require_same_dim(c);
        for (std::size_t i = 0; i < exp_.size(); ++i)
            if (exp_[i] > c.exp_[i]) return false;
        return true;
    }

    // Componentwise difference; requires o dominated_by *this.
    MultiIndex minus(const MultiIndex& o) const {
        require_same_dim(o);
        MultiIndex r = *this;
        for (std::size_t i = 0; i < exp_.size(); ++i) {
            r.exp_[i] -= o.exp_[i];
            if (r.exp_[i] < 0) throw std::invalid_argument("MultiIndex::minus: not dominated");
        }
        return r;
    }

    void require_same_dim(const MultiIndex& o) const {
        if (exp_.size() != o.exp_.size())
            throw std::invalid_argument("MultiIndex: dimension mismatch (" +
                                        std::to_string(exp_.size()) + " vs " +
                                        std::to_string(o.exp_.size()) + ")");
    }

private:
    std::vector<int> exp_;
};

// Total degree first, ascending lexicographic within a degree slice.
inline std::strong_ordering graded_lex_compare(const MultiIndex& a, const MultiIndex& b) {
    a.require_same_dim(b);
    const int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da <=> db;
    return a.exponents() <=> b.exponents();
}

struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return graded_lex_compare(a, b) == std::strong_ordering::less;
    }
};

inline std::string to_string(const MultiIndex& c) {
    std::string s = "(";
    for (int i = 0; i < c.dim(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    s += ")";
    return s;
}

// All c in N_0^q with total degree k, in increasing graded-lex order
// (equivalently lex-ascending, since the degree is fixed).
inline std::vector<MultiIndex> enumerate_degree(int q, int k) {
    if (q < 1) throw std::invalid_argument("enumerate_degree: q must be >= 1");
    if (k < 0) throw std::invalid_argument("enumerate_degree: k must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> cur(static_cast<std::size_t>(q), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == q - 1) {
            cur[static_cast<std::size_t>(pos)] = remaining;
            out.emplace_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(pos)] = e;
            self(self, pos + 1, remaining - e);
        }
    };
    rec(rec, 0, k);
    return out;
}

// Multiplicity vector (v_1,...,v_k) of a partition of k: v_i parts equal i.
struct PartitionVector {
    std::vector<int> multiplicity;  // multiplicity[i-1] = v_i

    int degree() const {  // k = sum i*v_i
        int k = 0;
        for (std::size_t i = 0; i < multiplicity.size(); ++i)
            k += static_cast<int>(i + 1) * multiplicity[i];
        return k;
    }

    int parts() const {  // s = sum v_i
        int s = 0;
        for (int v : multiplicity) s += v;
        return s;
    }

    bool operator==(const PartitionVector&) const = default;
};

// All (v_1,...,v_k) with sum v_i = s and sum i*v_i = k: the partitions of k
// into exactly s parts.  Generated from non-increasing part lists rather than
// by scanning the full v-lattice.  s > k (or s < 1) yields an empty sequence.
inline std::vector<PartitionVector> enumerate_partitions(int k, int s) {
    if (k < 1) throw std::invalid_argument("enumerate_partitions: k must be >= 1");
    std::vector<PartitionVector> out;
    if (s < 1 || s > k) return out;
    std::vector<int> parts;
    auto emit = [&]() {
        PartitionVector pv;
        pv.multiplicity.assign(static_cast<std::size_t>(k), 0);
        for (int p : parts) pv.multiplicity[static_cast<std::size_t>(p - 1)] += 1;
        out.push_back(std::move(pv));
    };
    auto rec = [&](auto&& self, int remaining, int parts_left, int max_part) -> void {
        if (parts_left == 0) {
            if (remaining == 0) emit();
            return;
        }
        const int hi = std::min(max_part, remaining - (parts_left - 1));
        const int lo = (remaining + parts_left - 1) / parts_left;  // ceil
        for (int p = hi; p >= lo; --p) {
            parts.push_back(p);
            self(self, remaining - p, parts_left - 1, p);
            parts.pop_back();
        }
    };
    rec(rec, k, s, k);
    return out;
}

// All ordered pairs (a,b) with a+b=c, in ascending graded-lex order of a.
// Count is prod(c_i + 1).
inline std::vector<std::pair<MultiIndex, MultiIndex>> split_pairs(const MultiIndex& c) {
    const int q = c.dim();
    if (q < 1) throw std::invalid_argument("split_pairs: empty index");
    std::vector<MultiIndex> lowers;
    std::vector<int> cur(static_cast<std::size_t>(q), 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == q) {
            lowers.emplace_back(cur);
            return;
        }
        for (int e = 0; e <= c[pos]; ++e) {
            cur[static_cast<std::size_t>(pos)] = e;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    std::sort(lowers.begin(), lowers.end(),
              [](const MultiIndex& a, const MultiIndex& b) { return GradedLexLess{}(a, b); });
    std::vector<std::pair<MultiIndex, MultiIndex>> out;
    out.reserve(lowers.size());
    for (auto& a : lowers) out.emplace_back(a, c.minus(a));
    return out;
}

}  // namespace fps
