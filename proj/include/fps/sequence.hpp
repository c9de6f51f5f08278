#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fps/rule.hpp"
#include "fps/scalar.hpp"

namespace fps {

struct RadiusHint {
    double value = 0.0;  // may be +infinity
    bool user_asserted = false;
};

// A one-variable outer series (g_n) with unbounded index access.  Sources:
// a finite coefficient list (zero-extended), a parsed closed-form rule in n,
// or the lazy Cauchy product of two sequences.  Immutable descriptor; the
// product source memoizes internally and stays observationally pure.
class CoeffSequence {
public:
    static CoeffSequence from_list(std::vector<Rational> items);
    static CoeffSequence from_rule(const std::string& text);  // throws ParseError

    // g_n as binary64; throws EvalError on rule domain errors.
    double coeff_double(long n) const;

    // g_n exactly, when every source along the way is sqrt-free; nullopt
    // otherwise.  Domain errors still throw.
    std::optional<Rational> coeff_exact(long n) const;

    bool exact_capable() const;

    // The backing coefficient list, when this sequence is list-sourced.
    const std::vector<Rational>* as_list() const;

    const std::optional<RadiusHint>& radius() const { return radius_; }
    void assert_radius(double value);  // user-asserted; overrides any derived hint

    const std::string& label() const { return label_; }

    friend CoeffSequence cauchy_seq_product(const CoeffSequence& a, const CoeffSequence& b);

    struct Impl;

private:
    CoeffSequence() = default;

    std::shared_ptr<const Impl> impl_;
    std::optional<RadiusHint> radius_;
    std::string label_;
};

// c_n = sum_{j<=n} a_j b_{n-j}, lazily evaluated; radius hint is the min of
// the inputs' hints when both are present.
CoeffSequence cauchy_seq_product(const CoeffSequence& a, const CoeffSequence& b);

inline CoeffSequence parse_rule(const std::string& text) { return CoeffSequence::from_rule(text); }

}  // namespace fps
