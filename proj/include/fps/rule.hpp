#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fps/scalar.hpp"

namespace fps {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct EvalError : std::runtime_error {
    long n;
    EvalError(const std::string& msg, long at_n)
        : std::runtime_error(msg + " (at n=" + std::to_string(at_n) + ")"), n(at_n) {}
};

// AST for closed-form coefficient rules in the integer variable n.
//
//   expr   := ["-"] term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := atom ["^" (integer | "n")]
//   atom   := integer | "n" | "(" expr ")" | "sqrt(" expr ")" | "fact(" expr ")"
struct RuleExpr {
    enum class Op { Constant, N, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Fact };

    Op op = Op::Constant;
    BigInt constant;                // Op::Constant
    long exponent = 0;              // Op::Pow, when !exponent_is_n
    bool exponent_is_n = false;     // Op::Pow
    std::vector<std::shared_ptr<const RuleExpr>> kids;
};

using RulePtr = std::shared_ptr<const RuleExpr>;

RulePtr parse_rule_text(const std::string& text);  // throws ParseError

double eval_rule_double(const RuleExpr& e, long n);  // throws EvalError

// Exact evaluation; callers must check sqrt_free first (Sqrt is a logic error
// here, not an EvalError).
Rational eval_rule_exact(const RuleExpr& e, long n);

bool sqrt_free(const RuleExpr& e);

// Radius-of-convergence catalog for sum g_n y^n.  Emits a value only for
// shapes whose limsup |g_n|^{1/n} is known exactly: products of constants,
// c^n factors, polynomial-in-n and sqrt(polynomial) factors, and a single
// fact(n) (numerator -> 0, denominator -> +inf).  Anything else: no hint.
std::optional<double> derive_radius(const RuleExpr& e);

}  // namespace fps
