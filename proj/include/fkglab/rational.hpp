#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fkglab {

// All probability weights and verdicts are exact rationals; doubles appear
// only in samplers, statistics and reporting.
using Rational = mpq_class;
using BigInt = mpz_class;

// Raised when an enumeration/scan exceeds its configured cap.
class cap_exceeded : public std::runtime_error {
 public:
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a chain or support leaves the kernel window.
class window_escape : public std::runtime_error {
 public:
  explicit window_escape(const std::string& what) : std::runtime_error(what) {}
};

Rational make_rational(long num, long den);
Rational make_rational(const BigInt& num, const BigInt& den);

// Base-10 parse (the GMP auto-detecting constructor reads "025" as octal).
BigInt bigint_from_decimal(const std::string& s);

// Accepts "p/q", plain integers, and decimal literals ("0.25", "-1.5").
Rational rational_from_string(const std::string& text);

std::string numerator_string(const Rational& q);
std::string denominator_string(const Rational& q);
std::string to_fraction_string(const Rational& q);  // "p/q", or "p" when q=1
double to_double(const Rational& q);

// e^{-x} rounded to a rational with `sig_digits` significant decimal digits.
// x must be positive.
Rational rational_exp_neg(const Rational& x, int sig_digits);

// base^{-alpha} rounded to `sig_digits` significant decimal digits; exact
// when alpha is a (positive) integer. base must be >= 1.
Rational rational_neg_power(long base, const Rational& alpha, int sig_digits);

}  // namespace fkglab
