#include "fps/scalar.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <vector>

namespace fps {

BigInt factorial(unsigned long n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

double factorial_double(long n) {
    if (n < 0) throw std::domain_error("factorial of a negative number");
    static const std::vector<double> table = [] {
        std::vector<double> t;
        t.reserve(171);
        double v = 1.0;
        t.push_back(1.0);
        for (int i = 1; i <= 170; ++i) {
            v *= i;
            t.push_back(v);
        }
        return t;
    }();
    if (n <= 170) return table[static_cast<std::size_t>(n)];
    return HUGE_VAL;  // 171! overflows binary64
}

Rational rational_pow(const Rational& base, unsigned long e) {
    if (e == 0) return Rational(1);  // 0^0 := 1 by convention
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    // base canonical implies base^e canonical
    return r;
}

std::string format_scalar(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string format_scalar(double x) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return std::string(buf.data());
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

[[noreturn]] void bad_literal(const std::string& text) {
    throw std::invalid_argument("not a numeric literal: '" + text + "'");
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

BigInt parse_signed_integer(const std::string& s, const std::string& whole) {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    if (!all_digits(t)) bad_literal(whole);
    BigInt z(t, 10);  // explicit base: leading zeros must not mean octal
    return neg ? BigInt(-z) : z;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) bad_literal(text);

    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num = parse_signed_integer(s.substr(0, slash), text);
        std::string den_s = strip(s.substr(slash + 1));
        if (!all_digits(den_s)) bad_literal(text);
        BigInt den(den_s, 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    }

    // [sign] digits [. digits] [eE [sign] digits]
    std::string t = s;
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
        neg = t[0] == '-';
        t = t.substr(1);
    }
    long exp10 = 0;
    if (auto epos = t.find_first_of("eE"); epos != std::string::npos) {
        std::string es = t.substr(epos + 1);
        t = t.substr(0, epos);
        bool eneg = false;
        if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
            eneg = es[0] == '-';
            es = es.substr(1);
        }
        if (!all_digits(es) || es.size() > 6) bad_literal(text);
        exp10 = std::strtol(es.c_str(), nullptr, 10);
        if (eneg) exp10 = -exp10;
    }
    std::string digits = t;
    if (auto dot = t.find('.'); dot != std::string::npos) {
        std::string frac = t.substr(dot + 1);
        digits = t.substr(0, dot) + frac;
        exp10 -= static_cast<long>(frac.size());
    }
    if (!all_digits(digits)) bad_literal(text);

    Rational r{BigInt(digits, 10)};
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 > 0)
        r *= Rational(p10);
    else if (exp10 < 0)
        r /= Rational(p10);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

double parse_double(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) throw std::invalid_argument("not a numeric literal: ''");
    if (s.find('/') != std::string::npos) return parse_rational(s).get_d();
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == nullptr || *end != '\0') bad_literal(s);
    if (!std::isfinite(v)) throw std::domain_error("non-finite binary64 literal: '" + s + "'");
    return v;
}

}  // namespace fps
