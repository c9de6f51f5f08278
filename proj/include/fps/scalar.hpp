#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace fps {

// Exact coefficient field: arbitrary-precision rationals, always canonical
// (lowest terms, positive denominator).  The binary64 field is plain double.
using Rational = mpq_class;
using BigInt = mpz_class;

inline bool scalar_is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool scalar_is_zero(double x) { return x == 0.0; }

inline double scalar_to_double(const Rational& x) { return x.get_d(); }
inline double scalar_to_double(double x) { return x; }

// Stored coefficients must stay finite in binary64 mode.
inline void scalar_check_storable(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite binary64 coefficient");
}
inline void scalar_check_storable(const Rational&) {}

// GMP rationals built from raw num/den pairs are not reduced; arithmetic and
// equality assume canonical form, so normalize at every storage boundary.
inline void scalar_canonicalize(Rational& x) { x.canonicalize(); }
inline void scalar_canonicalize(double&) {}

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

// Exact double factorial for small n, +infinity beyond the binary64 range.
double factorial_double(long n);

Rational rational_pow(const Rational& base, unsigned long e);

inline Rational scalar_pow(const Rational& base, unsigned long e) { return rational_pow(base, e); }
inline double scalar_pow(double base, unsigned long e) {
    return e == 0 ? 1.0 : std::pow(base, static_cast<double>(e));
}

template <typename S>
S scalar_from_bigint(const BigInt& z);
template <>
inline Rational scalar_from_bigint<Rational>(const BigInt& z) { return Rational(z); }
template <>
inline double scalar_from_bigint<double>(const BigInt& z) { return z.get_d(); }

template <typename S>
S scalar_from_rational(const Rational& q);
template <>
inline Rational scalar_from_rational<Rational>(const Rational& q) { return q; }
template <>
inline double scalar_from_rational<double>(const Rational& q) { return q.get_d(); }

// num/den as an S, den a positive big integer.
template <typename S>
S scalar_ratio(const BigInt& num, const BigInt& den);
template <>
inline Rational scalar_ratio<Rational>(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}
template <>
inline double scalar_ratio<double>(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r.get_d();
}

// "p" or "p/q" in lowest terms.
std::string format_scalar(const Rational& x);
// 17 significant digits, stable across platforms for golden output.
std::string format_scalar(double x);

// Accepts "p/q", integers, and decimal literals (optionally with exponent):
// "-3", "1/2", "0.25", "2.5e-3".  Exact in every case.
Rational parse_rational(const std::string& text);

double parse_double(const std::string& text);

template <typename S>
S parse_scalar(const std::string& text);
template <>
inline Rational parse_scalar<Rational>(const std::string& text) { return parse_rational(text); }
template <>
inline double parse_scalar<double>(const std::string& text) { return parse_double(text); }

template <typename S>
constexpr const char* scalar_mode_name();
template <>
constexpr const char* scalar_mode_name<Rational>() { return "exact"; }
template <>
constexpr const char* scalar_mode_name<double>() { return "binary64"; }

inline double abs_diff_double(const Rational& a, const Rational& b) {
    Rational d = a - b;
    return std::fabs(d.get_d());
}
inline double abs_diff_double(double a, double b) { return std::fabs(a - b); }

}  // namespace fps
