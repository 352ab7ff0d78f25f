#include "fkglab/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <cstdlib>

namespace fkglab {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt bigint_from_decimal(const std::string& s) {
  // Always base 10: the GMP auto-detecting constructor would read a leading
  // zero as octal.
  BigInt v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("cannot parse integer: '" + s + "'");
  return v;
}

Rational rational_from_string(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("cannot parse rational: '" + text + "'");
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail();

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) fail();
    try {
      return make_rational(bigint_from_decimal(num), bigint_from_decimal(den));
    } catch (const std::invalid_argument&) {
      fail();
    }
  }

  auto dot = s.find('.');
  if (dot == std::string::npos) {
    try {
      return Rational(bigint_from_decimal(s));
    } catch (const std::invalid_argument&) {
      fail();
    }
  }

  // Decimal literal: shift the point into an integer over a power of ten.
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") fail();
  BigInt den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  try {
    return make_rational(bigint_from_decimal(digits), den);
  } catch (const std::invalid_argument&) {
    fail();
  }
  return Rational(0);  // unreachable
}

std::string numerator_string(const Rational& q) { return q.get_num().get_str(); }
std::string denominator_string(const Rational& q) { return q.get_den().get_str(); }

std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return numerator_string(q);
  return numerator_string(q) + "/" + denominator_string(q);
}

double to_double(const Rational& q) { return q.get_d(); }

namespace {

// Round an MPFR value x > 0 to `sig_digits` significant decimal digits,
// returned as an exact rational n / 10^k.
Rational round_significant(mpfr_t x, int sig_digits) {
  if (sig_digits < 1) throw std::invalid_argument("sig_digits must be >= 1");
  if (mpfr_sgn(x) <= 0) throw std::invalid_argument("expected a positive value");

  // exp10 = floor(log10(x)) + 1: number of digits left of the point.
  mpfr_t lg;
  mpfr_init2(lg, 64);
  mpfr_log10(lg, x, MPFR_RNDN);
  long exp10 = mpfr_get_si(lg, MPFR_RNDD);
  if (mpfr_cmp_si(lg, exp10) >= 0) exp10 += 1;  // lg in [exp10-1, exp10)
  mpfr_clear(lg);

  long shift = sig_digits - exp10;  // multiply by 10^shift, then round
  mpfr_t scaled, pow10;
  mpfr_init2(scaled, mpfr_get_prec(x) + 64);
  mpfr_init2(pow10, mpfr_get_prec(x) + 64);
  mpfr_set_ui(pow10, 10, MPFR_RNDN);
  mpfr_pow_si(pow10, pow10, shift, MPFR_RNDN);
  mpfr_mul(scaled, x, pow10, MPFR_RNDN);
  mpfr_round(scaled, scaled);

  BigInt num;
  mpfr_get_z(num.get_mpz_t(), scaled, MPFR_RNDN);
  mpfr_clear(scaled);
  mpfr_clear(pow10);

  BigInt den = 1;
  if (shift >= 0) {
    for (long i = 0; i < shift; ++i) den *= 10;
  } else {
    for (long i = 0; i < -shift; ++i) num *= 10;
  }
  return make_rational(num, den);
}

mpfr_prec_t working_precision(int sig_digits) {
  // ~3.33 bits per decimal digit, padded generously.
  return static_cast<mpfr_prec_t>(sig_digits * 4 + 96);
}

void mpfr_from_rational(mpfr_t out, const Rational& q) {
  mpfr_set_q(out, q.get_mpq_t(), MPFR_RNDN);
}

}  // namespace

Rational rational_exp_neg(const Rational& x, int sig_digits) {
  if (x <= 0) throw std::invalid_argument("rational_exp_neg: x must be positive");
  mpfr_prec_t prec = working_precision(sig_digits);
  mpfr_t v;
  mpfr_init2(v, prec);
  mpfr_from_rational(v, x);
  mpfr_neg(v, v, MPFR_RNDN);
  mpfr_exp(v, v, MPFR_RNDN);
  Rational out = round_significant(v, sig_digits);
  mpfr_clear(v);
  return out;
}

Rational rational_neg_power(long base, const Rational& alpha, int sig_digits) {
  if (base < 1) throw std::invalid_argument("rational_neg_power: base must be >= 1");
  if (alpha <= 0) throw std::invalid_argument("rational_neg_power: alpha must be positive");
  if (alpha.get_den() == 1 && alpha.get_num().fits_slong_p()) {
    // Integer exponent: compute 1 / base^alpha exactly.
    long e = alpha.get_num().get_si();
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return make_rational(BigInt(1), p);
  }
  mpfr_prec_t prec = working_precision(sig_digits);
  mpfr_t v, a;
  mpfr_init2(v, prec);
  mpfr_init2(a, prec);
  mpfr_set_si(v, base, MPFR_RNDN);
  mpfr_from_rational(a, alpha);
  mpfr_neg(a, a, MPFR_RNDN);
  mpfr_pow(v, v, a, MPFR_RNDN);
  Rational out = round_significant(v, sig_digits);
  mpfr_clear(v);
  mpfr_clear(a);
  return out;
}

}  // namespace fkglab
