#include "fps/rule.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace fps {

namespace {

std::shared_ptr<RuleExpr> node(RuleExpr::Op op) {
    auto p = std::make_shared<RuleExpr>();
    p->op = op;
    return p;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    RulePtr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c)) fail(std::string("expected '") + c + "' " + what);
    }

    RulePtr expr() {
        std::shared_ptr<const RuleExpr> lhs;
        if (consume('-')) {  // leading unary minus, e.g. "(-1)^n"
            auto neg = node(RuleExpr::Op::Neg);
            neg->kids.push_back(term());
            lhs = neg;
        } else {
            lhs = term();
        }
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            auto bin = node(c == '+' ? RuleExpr::Op::Add : RuleExpr::Op::Sub);
            bin->kids.push_back(lhs);
            bin->kids.push_back(term());
            lhs = bin;
        }
        return lhs;
    }

    RulePtr term() {
        auto lhs = factor();
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') break;
            ++pos_;
            auto bin = node(c == '*' ? RuleExpr::Op::Mul : RuleExpr::Op::Div);
            bin->kids.push_back(lhs);
            bin->kids.push_back(factor());
            lhs = bin;
        }
        return lhs;
    }

    RulePtr factor() {
        auto base = atom();
        if (!consume('^')) return base;
        // Exponent atoms are restricted to integer constants or the literal n.
        auto pw = node(RuleExpr::Op::Pow);
        pw->kids.push_back(base);
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == 'n' && !is_ident_char(pos_ + 1)) {
            ++pos_;
            pw->exponent_is_n = true;
            return pw;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            BigInt v = integer();
            if (!v.fits_slong_p() || v.get_si() > 1000000)
                fail("exponent too large");
            pw->exponent = v.get_si();
            return pw;
        }
        fail("exponent must be an integer constant or 'n'");
    }

    bool is_ident_char(std::size_t i) const {
        return i < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i])) || s_[i] == '_');
    }

    BigInt integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return BigInt(s_.substr(start, pos_ - start), 10);
    }

    RulePtr atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')', "to close '('");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto k = node(RuleExpr::Op::Constant);
            k->constant = integer();
            return k;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (is_ident_char(pos_)) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "n") return node(RuleExpr::Op::N);
            if (name == "sqrt" || name == "fact") {
                expect('(', ("after '" + name + "'").c_str());
                auto fn = node(name == "sqrt" ? RuleExpr::Op::Sqrt : RuleExpr::Op::Fact);
                fn->kids.push_back(expr());
                expect(')', ("to close '" + name + "('").c_str());
                return fn;
            }
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail("expected a number, 'n', '(', 'sqrt(' or 'fact('");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

long integer_argument(double x, long n, const char* fn) {
    const double r = std::nearbyint(x);
    if (!std::isfinite(x) || std::fabs(x - r) > 1e-9 || std::fabs(r) > 1e15)
        throw EvalError(std::string(fn) + " argument is not an integer", n);
    if (r < 0) throw EvalError(std::string(fn) + " argument is negative", n);
    return static_cast<long>(r);
}

long integer_argument_exact(const Rational& x, long n, const char* fn) {
    if (x.get_den() != 1) throw EvalError(std::string(fn) + " argument is not an integer", n);
    if (sgn(x) < 0) throw EvalError(std::string(fn) + " argument is negative", n);
    if (!x.get_num().fits_slong_p() || x.get_num().get_si() > 100000)
        throw EvalError(std::string(fn) + " argument too large for exact evaluation", n);
    return x.get_num().get_si();
}

}  // namespace

RulePtr parse_rule_text(const std::string& text) { return Parser(text).parse(); }

double eval_rule_double(const RuleExpr& e, long n) {
    using Op = RuleExpr::Op;
    switch (e.op) {
        case Op::Constant: return e.constant.get_d();
        case Op::N: return static_cast<double>(n);
        case Op::Neg: return -eval_rule_double(*e.kids[0], n);
        case Op::Add: return eval_rule_double(*e.kids[0], n) + eval_rule_double(*e.kids[1], n);
        case Op::Sub: return eval_rule_double(*e.kids[0], n) - eval_rule_double(*e.kids[1], n);
        case Op::Mul: return eval_rule_double(*e.kids[0], n) * eval_rule_double(*e.kids[1], n);
        case Op::Div: {
            const double num = eval_rule_double(*e.kids[0], n);
            const double den = eval_rule_double(*e.kids[1], n);
            if (den == 0.0) throw EvalError("division by zero", n);
            return num / den;
        }
        case Op::Pow: {
            const long ex = e.exponent_is_n ? n : e.exponent;
            if (ex == 0) return 1.0;  // 0^0 := 1
            return std::pow(eval_rule_double(*e.kids[0], n), static_cast<double>(ex));
        }
        case Op::Sqrt: {
            const double a = eval_rule_double(*e.kids[0], n);
            if (a < 0) throw EvalError("sqrt of a negative value", n);
            return std::sqrt(a);
        }
        case Op::Fact: {
            const long a = integer_argument(eval_rule_double(*e.kids[0], n), n, "fact");
            return factorial_double(a);
        }
    }
    throw std::logic_error("eval_rule_double: bad op");
}

Rational eval_rule_exact(const RuleExpr& e, long n) {
    using Op = RuleExpr::Op;
    switch (e.op) {
        case Op::Constant: return Rational(e.constant);
        case Op::N: return Rational(static_cast<long>(n));
        case Op::Neg: return Rational(-eval_rule_exact(*e.kids[0], n));
        case Op::Add: return Rational(eval_rule_exact(*e.kids[0], n) + eval_rule_exact(*e.kids[1], n));
        case Op::Sub: return Rational(eval_rule_exact(*e.kids[0], n) - eval_rule_exact(*e.kids[1], n));
        case Op::Mul: return Rational(eval_rule_exact(*e.kids[0], n) * eval_rule_exact(*e.kids[1], n));
        case Op::Div: {
            const Rational num = eval_rule_exact(*e.kids[0], n);
            const Rational den = eval_rule_exact(*e.kids[1], n);
            if (sgn(den) == 0) throw EvalError("division by zero", n);
            return Rational(num / den);
        }
        case Op::Pow: {
            const long ex = e.exponent_is_n ? n : e.exponent;
            if (ex < 0) throw EvalError("negative exponent", n);
            return rational_pow(eval_rule_exact(*e.kids[0], n), static_cast<unsigned long>(ex));
        }
        case Op::Sqrt:
            throw std::logic_error("eval_rule_exact on a rule containing sqrt");
        case Op::Fact: {
            const long a = integer_argument_exact(eval_rule_exact(*e.kids[0], n), n, "fact");
            return Rational(factorial(static_cast<unsigned long>(a)));
        }
    }
    throw std::logic_error("eval_rule_exact: bad op");
}

bool sqrt_free(const RuleExpr& e) {
    if (e.op == RuleExpr::Op::Sqrt) return false;
    for (const auto& k : e.kids)
        if (!sqrt_free(*k)) return false;
    return true;
}

namespace {

using Op = RuleExpr::Op;

bool depends_on_n(const RuleExpr& e) {
    if (e.op == Op::N) return true;
    if (e.op == Op::Pow && e.exponent_is_n) return true;
    for (const auto& k : e.kids)
        if (depends_on_n(*k)) return true;
    return false;
}

// Polynomial in n with rational coefficients: +,-,*,unary -, integer powers,
// and division by nonzero constants.
bool is_polynomial(const RuleExpr& e) {
    switch (e.op) {
        case Op::Constant:
        case Op::N: return true;
        case Op::Neg: return is_polynomial(*e.kids[0]);
        case Op::Add:
        case Op::Sub:
        case Op::Mul: return is_polynomial(*e.kids[0]) && is_polynomial(*e.kids[1]);
        case Op::Div:
            if (depends_on_n(*e.kids[1])) return false;
            if (!is_polynomial(*e.kids[0])) return false;
            try {
                return sqrt_free(*e.kids[1]) && sgn(eval_rule_exact(*e.kids[1], 0)) != 0;
            } catch (const EvalError&) {
                return false;
            }
        case Op::Pow: return !e.exponent_is_n && is_polynomial(*e.kids[0]);
        case Op::Sqrt:
        case Op::Fact: return false;
    }
    return false;
}

constexpr long kDegreeCap = 64;

long poly_degree(const RuleExpr& e) {
    auto clamp = [](long d) { return std::min(d, kDegreeCap + 1); };
    switch (e.op) {
        case Op::Constant: return 0;
        case Op::N: return 1;
        case Op::Neg: return poly_degree(*e.kids[0]);
        case Op::Add:
        case Op::Sub: return std::max(poly_degree(*e.kids[0]), poly_degree(*e.kids[1]));
        case Op::Mul: return clamp(poly_degree(*e.kids[0]) + poly_degree(*e.kids[1]));
        case Op::Div: return poly_degree(*e.kids[0]);
        case Op::Pow: return clamp(poly_degree(*e.kids[0]) * e.exponent);
        default: return 0;
    }
}

// Exact zero test for a polynomial rule: a nonzero polynomial of degree d
// cannot vanish at d+1 points.  Degrees beyond the cap are not tested; the
// caller must decline a hint (-1 means "unknown").
int poly_zero_status(const RuleExpr& e) {
    const long d = poly_degree(e);
    if (d > kDegreeCap) return -1;
    for (long n = 0; n <= d; ++n) {
        try {
            if (sgn(eval_rule_exact(e, n)) != 0) return 0;
        } catch (const EvalError&) {
            return 0;
        }
    }
    return 1;
}

struct FactorScan {
    bool ok = true;
    double geometric = 1.0;  // accumulated |r| from c^n factors
    int fact_numerator = 0;
    int fact_denominator = 0;
    bool zero_factor = false;  // a constant-zero or zero-polynomial factor
};

bool is_const_expr(const RuleExpr& e) { return !depends_on_n(e); }

void scan_factors(const RuleExpr& e, bool inverted, FactorScan& fs) {
    if (!fs.ok) return;
    switch (e.op) {
        case Op::Mul:
            scan_factors(*e.kids[0], inverted, fs);
            scan_factors(*e.kids[1], inverted, fs);
            return;
        case Op::Div:
            scan_factors(*e.kids[0], inverted, fs);
            scan_factors(*e.kids[1], !inverted, fs);
            return;
        case Op::Neg:
            scan_factors(*e.kids[0], inverted, fs);
            return;
        default: break;
    }
    // A single factor.
    if (is_const_expr(e)) {
        // A constant scale never moves the radius; only a zero constant does.
        try {
            const double v = eval_rule_double(e, 0);
            if (v == 0.0) {
                if (inverted) fs.ok = false;  // divides by zero everywhere
                else fs.zero_factor = true;
            }
        } catch (const EvalError&) {
            fs.ok = false;
        }
        return;
    }
    if (e.op == Op::Pow && e.exponent_is_n && is_const_expr(*e.kids[0]) &&
        sqrt_free(*e.kids[0])) {
        try {
            const Rational base = eval_rule_exact(*e.kids[0], 0);
            const double r = std::fabs(base.get_d());
            if (r == 0.0) {
                // 0^n: the sequence dies after n=0
                if (inverted) fs.ok = false;
                else fs.zero_factor = true;  // treated as eventually-zero
                return;
            }
            if (inverted) fs.geometric /= r;
            else fs.geometric *= r;
        } catch (const EvalError&) {
            fs.ok = false;
        }
        return;
    }
    if (e.op == Op::Fact && e.kids[0]->op == Op::N) {
        if (inverted) ++fs.fact_denominator;
        else ++fs.fact_numerator;
        return;
    }
    if (e.op == Op::Sqrt && is_polynomial(*e.kids[0])) {
        switch (poly_zero_status(*e.kids[0])) {
            case 1:
                if (inverted) fs.ok = false;
                else fs.zero_factor = true;
                return;
            case 0: return;  // subexponential, no effect on the radius
            default: fs.ok = false; return;
        }
    }
    if (is_polynomial(e)) {
        switch (poly_zero_status(e)) {
            case 1:
                if (inverted) fs.ok = false;
                else fs.zero_factor = true;
                return;
            case 0: return;  // subexponential
            default: fs.ok = false; return;
        }
    }
    fs.ok = false;  // out of catalog
}

}  // namespace

std::optional<double> derive_radius(const RuleExpr& e) {
    if (is_polynomial(e)) {
        switch (poly_zero_status(e)) {
            case 1: return std::numeric_limits<double>::infinity();
            case 0: return 1.0;
            default: return std::nullopt;
        }
    }
    FactorScan fs;
    scan_factors(e, false, fs);
    if (!fs.ok) return std::nullopt;
    if (fs.zero_factor) return std::numeric_limits<double>::infinity();
    if (fs.fact_numerator > 0 && fs.fact_denominator > 0) return std::nullopt;
    if (fs.fact_numerator > 0) return 0.0;
    if (fs.fact_denominator > 0) return std::numeric_limits<double>::infinity();
    if (fs.geometric == 0.0 || !std::isfinite(fs.geometric)) return std::nullopt;
    return 1.0 / fs.geometric;
}

}  // namespace fps
