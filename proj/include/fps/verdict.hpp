#pragma once

#include <functional>
#include <optional>
#include <string>

#include "fps/scalar.hpp"

namespace fps {

struct VerdictOptions {
    double tolerance = 1e-9;
    long n_max = 1L << 20;
    int window = 64;             // trailing window for regime detection
    double overflow_guard = 1e100;
    double vanish_floor = 1e-8;  // "bounded away from zero" threshold
    double rho_cap = 0.9995;     // max window ratio accepted as geometric at
                                 // budget exhaustion (ratios -> 1 mean the
                                 // geometric-tail hypothesis is unsupported)
};

struct DivergenceWitness {
    std::string reason;  // "terms not vanishing" | "partial sums exceed guard" | ...
    long n_begin = 0;
    long n_end = 0;
    double sample = 0.0;  // a representative |t_n| or partial sum
};

struct InconclusiveDiagnostics {
    double last_partial = 0.0;
    double oscillation = 0.0;  // spread of the trailing partial sums
    long terms_used = 0;
};

// Three-valued outcome of a numeric series test.  Converged bounds are valid
// under the detected regime's hypothesis, named in `regime`:
//   "exact"        the tail is identically zero (or the sum is a single term)
//   "alternating"  signs alternate, |t| decreasing; |S - S_N| <= |t_N|
//   "ratio"        trailing ratios <= rho < 1;      |S - S_N| <= |t_N| rho/(1-rho)
//   "radius"       convergence certified analytically from a radius hint
struct ConvergenceVerdict {
    enum class Kind { Converged, Diverged, Inconclusive };

    Kind kind = Kind::Inconclusive;
    double value = 0.0;        // Converged only
    double error_bound = 0.0;  // Converged only
    std::optional<Rational> exact_value;  // present when derived exactly
    std::string regime;
    std::optional<DivergenceWitness> witness;
    std::optional<InconclusiveDiagnostics> diagnostics;
    long terms_used = 0;

    bool converged() const { return kind == Kind::Converged; }
    bool diverged() const { return kind == Kind::Diverged; }
    bool inconclusive() const { return kind == Kind::Inconclusive; }

    static ConvergenceVerdict exact(Rational v);
    static ConvergenceVerdict converged_numeric(double v, double bound, std::string regime,
                                                long terms);
    static ConvergenceVerdict diverged_with(DivergenceWitness w, long terms);
    static ConvergenceVerdict inconclusive_with(InconclusiveDiagnostics d, std::string note);
};

const char* to_string(ConvergenceVerdict::Kind k);

// Sums t(0), t(1), ... with regime detection on a trailing window.  The term
// callable is invoked once per index, in order.  Never throws for convergence
// reasons; Inconclusive is a value.
ConvergenceVerdict partial_sum_verdict(const std::function<double(long)>& term,
                                       const VerdictOptions& opts);

// Same loop under an external convergence certificate (radius hint): an
// inconclusive outcome is promoted to Converged with the best available
// bound, divergence regimes are disabled, but numeric overflow still yields
// Diverged (the certificate was contradicted).
ConvergenceVerdict certified_sum(const std::function<double(long)>& term,
                                 const VerdictOptions& opts);

}  // namespace fps
