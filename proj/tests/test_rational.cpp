#include <doctest.h>

#include <cmath>

#include "fkglab/rational.hpp"
#include "fkglab/stats.hpp"

using namespace fkglab;

TEST_CASE("rational parsing") {
  CHECK(rational_from_string("1/3") == make_rational(1, 3));
  CHECK(rational_from_string("-1/2") == make_rational(-1, 2));
  CHECK(rational_from_string("0.25") == make_rational(1, 4));
  CHECK(rational_from_string("-1.5") == make_rational(-3, 2));
  CHECK(rational_from_string("7") == Rational(7));
  CHECK(rational_from_string(" 2 / 6 ") == make_rational(1, 3));
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
}

TEST_CASE("fraction strings") {
  CHECK(to_fraction_string(make_rational(2, 6)) == "1/3");
  CHECK(to_fraction_string(Rational(5)) == "5");
  CHECK(numerator_string(make_rational(-3, 9)) == "-1");
  CHECK(denominator_string(make_rational(-3, 9)) == "3");
}

TEST_CASE("exp rationalization keeps the stated precision") {
  // e^{-1} = 0.36787944117144232...; 30 significant digits.
  Rational r = rational_exp_neg(Rational(1), 30);
  CHECK(denominator_string(r).size() <= 31);
  double err = std::abs(to_double(r) - std::exp(-1.0));
  CHECK(err < 1e-15);
  // Low precision round-trips to a short fraction.
  CHECK(rational_exp_neg(Rational(1), 2) == make_rational(37, 100));
}

TEST_CASE("negative powers are exact for integer exponents") {
  CHECK(rational_neg_power(3, Rational(2), 30) == make_rational(1, 9));
  CHECK(rational_neg_power(2, Rational(10), 5) == make_rational(1, 1024));
  // 2^{-3/2} = 0.35355...
  Rational r = rational_neg_power(2, make_rational(3, 2), 20);
  CHECK(std::abs(to_double(r) - std::pow(2.0, -1.5)) < 1e-15);
}

TEST_CASE("normal quantile matches the CDF") {
  for (double p : {0.001, 0.005, 0.025, 0.5, 0.975, 0.995, 0.9995}) {
    double x = normal_quantile(p);
    CHECK(std::abs(normal_cdf(x) - p) < 1e-12);
  }
  CHECK(std::abs(normal_quantile(0.975) - 1.959963984540054) < 1e-9);
}

TEST_CASE("chi-square quantile brackets known values") {
  // df=1, p=0.95 -> 3.8415; df=10, p=0.999 -> 29.588.
  CHECK(std::abs(chi_square_quantile(0.95, 1) - 3.841458821) < 1e-6);
  CHECK(std::abs(chi_square_quantile(0.999, 10) - 29.58829845) < 1e-5);
  CHECK(std::abs(chi_square_cdf(chi_square_quantile(0.999, 19), 19) - 0.999) < 1e-10);
}
