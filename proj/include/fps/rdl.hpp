#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fps/composition.hpp"

namespace fps {

enum class RdlStatus { Holds, RhsNotExists, LhsNotExists, Inconclusive };
const char* to_string(RdlStatus s);

struct RdlOptions {
    ComposeOptions compose{};
    double tolerance = 1e-9;     // coefficientwise discrepancy tolerance
    long nmax_product = 1L << 14;  // verdict budget for the (AB)∘P side; the
                                   // product terms cost O(n) each
};

// (A∘P)(B∘P) versus (AB)∘P, compared coefficientwise up to degree K.
struct RdlReport {
    int q = 0;
    int K = 0;
    CompositionReport a_of_p;
    CompositionReport b_of_p;
    std::optional<AnySeries> lhs_product;
    CompositionReport ab_of_p;
    RdlStatus status = RdlStatus::Inconclusive;
    std::optional<double> max_discrepancy;
    std::string detail;
};

RdlReport rdl_verify(const CoeffSequence& A, const CoeffSequence& B, const AnySeries& P,
                     const RdlOptions& opts = {});

// Reproduction of the counterexample that breaks the unrestricted law:
// A with a_n = (-1)^n/sqrt(n+1), P = (1,0,0,...).  A∘P converges while the
// Cauchy square (AA)∘P has terms |c_n| >= 2(n+1)/(n+2), so it diverges.
struct CounterexampleReport {
    long n_terms = 0;
    struct Checkpoint {
        long n;
        double partial_sum;
        double bound;  // alternating-series remainder |tail| <= 1/sqrt(n+2)
    };
    std::vector<Checkpoint> checkpoints;
    double final_value = 0.0;
    double final_bound = 0.0;
    double min_margin = 0.0;  // min over n of |c_n| - 2(n+1)/(n+2); >= 0 expected
    long margin_argmin = 0;
    bool lower_bound_ok = false;
    double sample_c_n = 0.0;  // |c| at the last computed index
    RdlReport rdl;
};

CounterexampleReport counterexample_demo(long n_terms, const RdlOptions& opts = {});

// Abel's theorem via the law with P = I: if sum a, sum b and their Cauchy
// product all converge, (sum a)(sum b) = sum c within the composed bounds.
struct AbelReport {
    ConvergenceVerdict sum_a, sum_b, sum_c;
    bool applicable = false;   // all three verdicts Converged
    std::string detail;        // which side failed, when not applicable
    double product_value = 0.0;
    double combined_bound = 0.0;  // |da||Sb| + |Sa||db| + |da||db| + dc
    double discrepancy = 0.0;     // |Sa*Sb - Sc|
    bool consistent = false;      // discrepancy <= combined_bound
    RdlReport rdl;
};

AbelReport abel_check(const CoeffSequence& a, const CoeffSequence& b,
                      const RdlOptions& opts = {});

}  // namespace fps
