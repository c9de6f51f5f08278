#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fps/sequence.hpp"
#include "fps/series.hpp"
#include "fps/verdict.hpp"

namespace fps {

using AnySeries = std::variant<ExactSeries, NumericSeries>;

inline int any_vars(const AnySeries& f) {
    return std::visit([](const auto& s) { return s.vars(); }, f);
}
inline int any_truncation(const AnySeries& f) {
    return std::visit([](const auto& s) { return s.truncation(); }, f);
}
inline bool any_is_exact(const AnySeries& f) {
    return std::holds_alternative<ExactSeries>(f);
}

// d_{k,s}: the degree-k series collecting (1/(v_1!...v_k!)) f[1]^{v_1}...f[k]^{v_k}
// over the partitions of k into exactly s parts.  Every cell is supported only
// in total degree k.
template <typename S>
class DTable {
public:
    DTable(int q, int K)
        : q_(q), K_(K),
          cells_(static_cast<std::size_t>(K) * (static_cast<std::size_t>(K) + 1) / 2,
                 TruncatedSeries<S>(q, K)) {}

    int truncation() const { return K_; }

    const TruncatedSeries<S>& at(int k, int s) const {
        return cells_[index(k, s)];
    }

    TruncatedSeries<S>& cell(int k, int s) { return cells_[index(k, s)]; }

private:
    std::size_t index(int k, int s) const {
        if (k < 1 || k > K_ || s < 1 || s > k)
            throw std::out_of_range("DTable: need 1 <= s <= k <= K");
        return static_cast<std::size_t>(k - 1) * k / 2 + static_cast<std::size_t>(s - 1);
    }

    int q_, K_;
    std::vector<TruncatedSeries<S>> cells_;
};

template <typename S>
DTable<S> d_table(const TruncatedSeries<S>& f, int K, BlockPowerCache<S>& cache) {
    if (K > f.truncation())
        throw std::invalid_argument("d_table: K exceeds the truncation of f");
    DTable<S> dt(f.vars(), f.truncation());
    for (int k = 1; k <= K; ++k) {
        for (int s = 1; s <= k; ++s) {
            auto& cell = dt.cell(k, s);
            for (const auto& pv : enumerate_partitions(k, s)) {
                TruncatedSeries<S> prod = TruncatedSeries<S>::identity(f.vars(), f.truncation());
                bool vanished = false;
                BigInt denom(1);
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
                const S coef = scalar_ratio<S>(BigInt(1), denom);
                for (const auto& [c, v] : prod.terms()) cell.add_to(c, S(coef * v));
            }
        }
    }
    return dt;
}

template <typename S>
DTable<S> d_table(const TruncatedSeries<S>& f, int K) {
    BlockPowerCache<S> cache(f);
    return d_table(f, K, cache);
}

// G_s = sum_{n>=s} C(n,s) g_n b0^{n-s}, the checkable object of the existence
// criterion.  Fast paths: b0 = 0 gives G_s = g_s exactly; a radius hint R with
// |b0| < R certifies convergence (partial sums supply value and bound) and
// |b0| > R certifies divergence.  Otherwise the regime-based numeric verdict.
ConvergenceVerdict g_shifted_sum(const CoeffSequence& g, double b0, long s,
                                 const VerdictOptions& opts);

enum class SpecialCase { None, ConstantInner, NonunitInner };
const char* to_string(SpecialCase sc);

struct ComposeOptions {
    VerdictOptions verdict{};
    int check_depth = 32;                 // direct partial-sum cross-check depth
    double tolerance_consistency = 1e-6;
};

// A printable scalar: binary64 value plus the exact rational when one exists.
struct ReportScalar {
    double approx = 0.0;
    std::optional<Rational> exact;

    std::string str() const { return exact ? format_scalar(*exact) : format_scalar(approx); }
    bool is_zero() const { return exact ? scalar_is_zero(*exact) : approx == 0.0; }
};

struct CompositionReport {
    int q = 0;
    int K = 0;
    ReportScalar b0;
    SpecialCase special_case = SpecialCase::None;
    std::vector<ConvergenceVerdict> G;  // s = 0..K (constant inner: single verdict)
    std::optional<AnySeries> result;
    std::optional<double> residual;     // max_c |h_c - sum_{n<=d} g_n f^n_c|
    bool certified_all_degrees = false; // radius path (or special case) covers every k
    std::optional<int> first_failure;   // least s whose verdict is not Converged
    std::string note;

    bool exists() const;
    bool any_inconclusive() const;
};

// Composition h = g(f) through the d-table decomposition: h_(0,...,0) = G_0 and
// h[k] = sum_{s=1..k} s! G_s d_{k,s}.  Existence failures are report states.
CompositionReport compose(const CoeffSequence& g, const AnySeries& f,
                          const ComposeOptions& opts = {});

// Verdicts only (condition (3.1) of the criterion); no result series, no
// residual.
CompositionReport existence_check(const CoeffSequence& g, const AnySeries& f,
                                  const ComposeOptions& opts = {});

}  // namespace fps
