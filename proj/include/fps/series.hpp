#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fps/multiindex.hpp"
#include "fps/scalar.hpp"

namespace fps {

// A q-variable formal power series truncated at total degree K.  Sparse map
// keyed by multi-index in graded-lex order; absent indices are zero and exact
// zeros are never stored, so equality is structural.  Immutable in spirit:
// all operations below build fresh values.
template <typename S>
class TruncatedSeries {
public:
    using TermMap = std::map<MultiIndex, S, GradedLexLess>;

    TruncatedSeries(int q, int K) : q_(q), K_(K) {
        if (q < 1) throw std::invalid_argument("TruncatedSeries: q must be >= 1");
        if (K < 0) throw std::invalid_argument("TruncatedSeries: K must be >= 0");
    }

    static TruncatedSeries zero(int q, int K) { return TruncatedSeries(q, K); }

    static TruncatedSeries identity(int q, int K) {  // the series I
        TruncatedSeries r(q, K);
        r.set(MultiIndex::zero(q), S(1));
        return r;
    }

    static TruncatedSeries constant(int q, int K, const S& b) {
        TruncatedSeries r(q, K);
        r.set(MultiIndex::zero(q), b);
        return r;
    }

    static TruncatedSeries monomial(int q, int K, const MultiIndex& c, const S& a) {
        TruncatedSeries r(q, K);
        r.set(c, a);
        return r;
    }

    int vars() const { return q_; }
    int truncation() const { return K_; }
    const TermMap& terms() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }

    S coeff(const MultiIndex& c) const {
        check_index(c);
        auto it = coeffs_.find(c);
        return it == coeffs_.end() ? S(0) : it->second;
    }

    S constant_term() const { return coeff(MultiIndex::zero(q_)); }

    void set(const MultiIndex& c, S v) {
        check_index(c);
        scalar_canonicalize(v);
        scalar_check_storable(v);
        if (scalar_is_zero(v))
            coeffs_.erase(c);
        else
            coeffs_.insert_or_assign(c, std::move(v));
    }

    void add_to(const MultiIndex& c, S v) {
        scalar_canonicalize(v);
        if (scalar_is_zero(v)) return;
        check_index(c);
        scalar_check_storable(v);
        // try_emplace moves v only when it actually inserts
        auto [it, inserted] = coeffs_.try_emplace(c, std::move(v));
        if (!inserted) {
            it->second += v;
            scalar_check_storable(it->second);
            if (scalar_is_zero(it->second)) coeffs_.erase(it);
        }
    }

    bool operator==(const TruncatedSeries&) const = default;

private:
    void check_index(const MultiIndex& c) const {
        if (c.dim() != q_)
            throw std::invalid_argument("TruncatedSeries: index dimension " +
                                        std::to_string(c.dim()) + " does not match q=" +
                                        std::to_string(q_));
        if (c.total_degree() > K_)
            throw std::out_of_range("TruncatedSeries: degree " +
                                    std::to_string(c.total_degree()) + " exceeds truncation K=" +
                                    std::to_string(K_));
    }

    int q_;
    int K_;
    TermMap coeffs_;
};

using ExactSeries = TruncatedSeries<Rational>;
using NumericSeries = TruncatedSeries<double>;

template <typename S>
void require_same_shape(const TruncatedSeries<S>& f, const TruncatedSeries<S>& g,
                        const char* op) {
    if (f.vars() != g.vars() || f.truncation() != g.truncation())
        throw std::invalid_argument(std::string(op) + ": shape mismatch (q=" +
                                    std::to_string(f.vars()) + ",K=" +
                                    std::to_string(f.truncation()) + ") vs (q=" +
                                    std::to_string(g.vars()) + ",K=" +
                                    std::to_string(g.truncation()) + ")");
}

// alpha*f + beta*g coefficientwise; covers add, subtract and scale.
template <typename S>
TruncatedSeries<S> linear_combine(const std::type_identity_t<S>& alpha,
                                  const TruncatedSeries<S>& f,
                                  const std::type_identity_t<S>& beta,
                                  const TruncatedSeries<S>& g) {
    require_same_shape(f, g, "linear_combine");
    TruncatedSeries<S> r(f.vars(), f.truncation());
    for (const auto& [c, v] : f.terms()) r.add_to(c, S(alpha * v));
    for (const auto& [c, v] : g.terms()) r.add_to(c, S(beta * v));
    return r;
}

template <typename S>
TruncatedSeries<S> operator+(const TruncatedSeries<S>& f, const TruncatedSeries<S>& g) {
    return linear_combine(S(1), f, S(1), g);
}

template <typename S>
TruncatedSeries<S> operator-(const TruncatedSeries<S>& f, const TruncatedSeries<S>& g) {
    return linear_combine(S(1), f, S(-1), g);
}

template <typename S>
TruncatedSeries<S> operator*(const std::type_identity_t<S>& a, const TruncatedSeries<S>& f) {
    TruncatedSeries<S> r(f.vars(), f.truncation());
    for (const auto& [c, v] : f.terms()) r.add_to(c, S(a * v));
    return r;
}

// q-dimensional Cauchy product truncated at K.  For each output index the
// contributions accumulate in ascending graded-lex order of the left split,
// which pins the binary64 summation order.
template <typename S>
TruncatedSeries<S> mul(const TruncatedSeries<S>& f, const TruncatedSeries<S>& g) {
    require_same_shape(f, g, "mul");
    const int K = f.truncation();
    TruncatedSeries<S> r(f.vars(), K);
    for (const auto& [a, fa] : f.terms()) {
        const int da = a.total_degree();
        for (const auto& [b, gb] : g.terms()) {
            if (da + b.total_degree() > K) break;  // map is degree-sorted
            r.add_to(a + b, S(fa * gb));
        }
    }
    return r;
}

template <typename S>
TruncatedSeries<S> operator*(const TruncatedSeries<S>& f, const TruncatedSeries<S>& g) {
    return mul(f, g);
}

// The k-th block f[k]: coefficients of total degree exactly k.
template <typename S>
TruncatedSeries<S> block(const TruncatedSeries<S>& f, int k) {
    if (k < 0 || k > f.truncation())
        throw std::out_of_range("block: k=" + std::to_string(k) + " outside [0, K=" +
                                std::to_string(f.truncation()) + "]");
    TruncatedSeries<S> r(f.vars(), f.truncation());
    for (const auto& [c, v] : f.terms())
        if (c.total_degree() == k) r.set(c, v);
    return r;
}

template <typename S>
TruncatedSeries<S> pow_repeated(const TruncatedSeries<S>& f, int n) {
    if (n < 0) throw std::invalid_argument("pow_repeated: n must be >= 0");
    if (n == 0) return TruncatedSeries<S>::identity(f.vars(), f.truncation());
    TruncatedSeries<S> r = f;
    for (int i = 1; i < n; ++i) r = mul(r, f);
    return r;
}

// Caches the blocks f[i] and their powers f[i]^e.  Shared between the
// multinomial power path and the d-table, which need the same products.
template <typename S>
class BlockPowerCache {
public:
    explicit BlockPowerCache(const TruncatedSeries<S>& f)
        : q_(f.vars()), K_(f.truncation()),
          blocks_(static_cast<std::size_t>(K_) + 1, TruncatedSeries<S>(f.vars(), f.truncation())) {
        for (const auto& [c, v] : f.terms())
            blocks_[static_cast<std::size_t>(c.total_degree())].set(c, v);
    }

    int vars() const { return q_; }
    int truncation() const { return K_; }

    const TruncatedSeries<S>& block_at(int i) const {
        if (i < 0 || i > K_) throw std::out_of_range("BlockPowerCache: block out of range");
        return blocks_[static_cast<std::size_t>(i)];
    }

    const TruncatedSeries<S>& power(int i, int e) {
        if (e == 0) {
            if (!identity_) identity_ = TruncatedSeries<S>::identity(q_, K_);
            return *identity_;
        }
        if (e == 1) return block_at(i);
        auto found = pows_.find({i, e});
        if (found != pows_.end()) return found->second;
        TruncatedSeries<S> p = mul(power(i, e - 1), block_at(i));
        return pows_.emplace(std::make_pair(i, e), std::move(p)).first->second;
    }

private:
    int q_, K_;
    std::vector<TruncatedSeries<S>> blocks_;
    std::optional<TruncatedSeries<S>> identity_;
    std::map<std::pair<int, int>, TruncatedSeries<S>> pows_;
};

// f^n through the multinomial expansion over blocks: for each total degree k
// the contributing exponent vectors (v_0,...,v_k) solve v_0+...+v_k = n and
// v_1+2v_2+...+kv_k = k, and f[0]^{v_0} folds into b0^{n-s} with s = sum_{i>=1} v_i.
// Multinomial coefficients are computed in big integers, then converted.
template <typename S>
TruncatedSeries<S> pow_multinomial(const TruncatedSeries<S>& f, int n, BlockPowerCache<S>& cache) {
    if (n < 0) throw std::invalid_argument("pow_multinomial: n must be >= 0");
    const int q = f.vars(), K = f.truncation();
    TruncatedSeries<S> r(q, K);
    const S b0 = f.constant_term();
    const bool b0_zero = scalar_is_zero(b0);

    // k = 0: only v_0 = n contributes, coefficient b0^n (0^0 = 1).
    r.add_to(MultiIndex::zero(q), scalar_pow(b0, static_cast<unsigned long>(n)));

    const BigInt n_fact = factorial(static_cast<unsigned long>(n));
    for (int k = 1; k <= K; ++k) {
        for (int s = 1; s <= std::min(k, n); ++s) {
            if (b0_zero && n > s) continue;  // b0^{n-s} = 0
            for (const auto& pv : enumerate_partitions(k, s)) {
                TruncatedSeries<S> prod = TruncatedSeries<S>::identity(q, K);
                bool vanished = false;
                BigInt denom = factorial(static_cast<unsigned long>(n - s));
                for (int i = 1; i <= k; ++i) {
                    const int vi = pv.multiplicity[static_cast<std::size_t>(i - 1)];
                    if (vi == 0) continue;
                    const auto& p = cache.power(i, vi);
                    if (p.is_zero()) {
                        vanished = true;
                        break;
                    }
                    prod = mul(prod, p);
                    denom *= factorial(static_cast<unsigned long>(vi));
                }
                if (vanished || prod.is_zero()) continue;
                S coef = scalar_ratio<S>(n_fact, denom);
                coef = S(coef * scalar_pow(b0, static_cast<unsigned long>(n - s)));
                for (const auto& [c, v] : prod.terms()) r.add_to(c, S(coef * v));
            }
        }
    }
    return r;
}

template <typename S>
TruncatedSeries<S> pow_multinomial(const TruncatedSeries<S>& f, int n) {
    BlockPowerCache<S> cache(f);
    return pow_multinomial(f, n, cache);
}

// Least positive l with f[l] != theta, together with the lex-minimal index of
// that block's support.  Absent when f = b*I within the truncation.
struct LowestBlock {
    int l;
    MultiIndex leading;
};

template <typename S>
std::optional<LowestBlock> lowest_nonconstant_block(const TruncatedSeries<S>& f) {
    for (const auto& [c, v] : f.terms()) {
        const int k = c.total_degree();
        if (k >= 1) return LowestBlock{k, c};  // graded-lex order: first hit is lex-minimal in C_l
    }
    return std::nullopt;
}

// Reinterpret f at truncation K2, dropping terms of higher degree.
template <typename S>
TruncatedSeries<S> with_truncation(const TruncatedSeries<S>& f, int K2) {
    TruncatedSeries<S> r(f.vars(), K2);
    for (const auto& [c, v] : f.terms()) {
        if (c.total_degree() > K2) break;
        r.set(c, v);
    }
    return r;
}

inline NumericSeries to_binary64(const ExactSeries& f) {
    NumericSeries r(f.vars(), f.truncation());
    for (const auto& [c, v] : f.terms()) r.set(c, v.get_d());
    return r;
}

inline const NumericSeries& to_binary64(const NumericSeries& f) { return f; }

// Max over the union of supports of |f_c - g_c| as binary64; exact
// differences are formed exactly first.
template <typename S>
double max_abs_diff(const TruncatedSeries<S>& f, const TruncatedSeries<S>& g) {
    require_same_shape(f, g, "max_abs_diff");
    double m = 0.0;
    for (const auto& [c, v] : f.terms()) m = std::max(m, abs_diff_double(v, g.coeff(c)));
    for (const auto& [c, v] : g.terms()) m = std::max(m, abs_diff_double(f.coeff(c), v));
    return m;
}

// Absolute-or-relative coefficientwise comparison for binary64 series.
inline bool approx_equal(const NumericSeries& f, const NumericSeries& g, double tol = 1e-9) {
    if (f.vars() != g.vars() || f.truncation() != g.truncation()) return false;
    auto close = [tol](double a, double b) {
        return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
    };
    for (const auto& [c, v] : f.terms())
        if (!close(v, g.coeff(c))) return false;
    for (const auto& [c, v] : g.terms())
        if (!close(f.coeff(c), v)) return false;
    return true;
}

template <typename S>
std::string to_string(const TruncatedSeries<S>& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [c, v] : f.terms()) {
        if (!out.empty()) out += " + ";
        out += format_scalar(v) + "*X^" + to_string(c);
    }
    return out;
}

}  // namespace fps
