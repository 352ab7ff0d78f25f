#include <doctest.h>

#include "fkglab/measure.hpp"

using namespace fkglab;

TEST_CASE("atomic measure validation") {
  CHECK_THROWS_AS(AtomicMeasure(1, {{{0}, make_rational(1, 2)}}),
                  std::invalid_argument);  // does not sum to 1
  CHECK_THROWS_AS(AtomicMeasure(1, {{{0}, make_rational(1, 2)},
                                    {{0}, make_rational(1, 2)}}),
                  std::invalid_argument);  // duplicate atom
  AtomicMeasure m(1, {{{0}, make_rational(1, 2)},
                      {{1}, make_rational(1, 2)},
                      {{2}, Rational(0)}});
  CHECK(m.support_size() == 2);  // zero atoms are dropped
  CHECK(m.prob({0}) == make_rational(1, 2));
  CHECK(m.prob({5}) == 0);
}

TEST_CASE("discrete laplace: exact-ratio form matches the beta = ln 2 values") {
  // ratio 1/2 <-> beta = ln 2: K=1 gives {-1: 1/4, 0: 1/2, 1: 1/4}.
  IncrementLaw law = discrete_laplace_ratio(make_rational(1, 2), 1);
  CHECK(law.prob(-1) == make_rational(1, 4));
  CHECK(law.prob(0) == make_rational(1, 2));
  CHECK(law.prob(1) == make_rational(1, 4));
  CHECK_THROWS_AS(discrete_laplace_ratio(make_rational(1, 2), 0),
                  std::invalid_argument);

  // K=2: weights proportional to {1/4, 1/2, 1, 1/2, 1/4}.
  IncrementLaw k2 = discrete_laplace_ratio(make_rational(1, 2), 2);
  CHECK(k2.prob(2) * 4 == k2.prob(0));
  CHECK(k2.prob(1) * 2 == k2.prob(0));
  CHECK(k2.prob(-2) == k2.prob(2));

  // beta form: weights are exact powers of the rounded ratio.
  IncrementLaw b = discrete_laplace(make_rational(7, 10), 3, 30);
  Rational r = b.prob(1) / b.prob(0);
  CHECK(b.prob(2) == b.prob(0) * r * r);
  CHECK(b.prob(3) == b.prob(0) * r * r * r);
}

TEST_CASE("lazy srw family") {
  IncrementLaw third = lazy_srw(make_rational(1, 3));
  CHECK(third.prob(-1) == make_rational(1, 3));
  CHECK(third.prob(0) == make_rational(1, 3));
  CHECK(third.prob(1) == make_rational(1, 3));

  IncrementLaw srw = lazy_srw(Rational(0));
  CHECK(srw.support() == std::vector<int64_t>{-1, 1});
  CHECK(srw.span_gcd() == 2);
  CHECK(srw.residue() == 1);

  IncrementLaw still = lazy_srw(Rational(1));
  CHECK(still.degenerate());
  CHECK(still.prob(0) == 1);

  CHECK_THROWS_AS(lazy_srw(make_rational(3, 2)), std::invalid_argument);
}

TEST_CASE("power law: exact for integer alpha, failing ratio pinned") {
  IncrementLaw law = power_law(Rational(2), 2);
  // Proportional to {1/9, 1/4, 1, 1/4, 1/9}: check the scale-free ratios.
  CHECK(law.prob(0) == law.prob(1) * 4);
  CHECK(law.prob(0) == law.prob(2) * 9);
  // p_0 p_2 / p_1^2 = 16/9 > 1: the family is not log-concave.
  CHECK(law.prob(0) * law.prob(2) / (law.prob(1) * law.prob(1)) ==
        make_rational(16, 9));
  CHECK_THROWS_AS(power_law(Rational(2), 1), std::invalid_argument);
}

TEST_CASE("support gcd metadata") {
  std::vector<std::pair<int64_t, Rational>> pmf{{0, make_rational(1, 3)},
                                                {6, make_rational(1, 3)},
                                                {9, make_rational(1, 3)}};
  IncrementLaw law(std::move(pmf));
  CHECK(law.span_gcd() == 3);
  CHECK(law.residue() == 0);
  // Supp ⊆ aZ + b with a maximal: every difference is divisible by a.
  for (int64_t x : law.support())
    for (int64_t y : law.support()) CHECK((x - y) % law.span_gcd() == 0);
}

TEST_CASE("kernel rows are exact translates of the increment law") {
  IncrementLaw law = discrete_laplace_ratio(make_rational(1, 2), 1);
  TransitionKernel kernel = kernel_from_increments(law, -2, 2);
  CHECK(*kernel.prob(0, 1) == make_rational(1, 4));
  CHECK(*kernel.prob(0, -1) == make_rational(1, 4));
  CHECK(*kernel.prob(0, 0) == make_rational(1, 2));
  for (int64_t x = -2; x <= 1; ++x)
    for (const auto& [y, p] : kernel.row(x)) {
      REQUIRE(kernel.prob(x + 1, y + 1) != nullptr);
      CHECK(*kernel.prob(x + 1, y + 1) == p);
    }
  CHECK(kernel.prob(0, 2) == nullptr);
  CHECK_THROWS_AS(kernel.row(5), window_escape);
  CHECK_THROWS_AS(kernel_from_increments(law, 2, 1), std::invalid_argument);
}

TEST_CASE("kernel row sums validated") {
  std::vector<std::vector<std::pair<int64_t, Rational>>> bad_rows{
      {{0, make_rational(1, 2)}}};
  CHECK_THROWS_AS(TransitionKernel(0, 0, std::move(bad_rows)),
                  std::invalid_argument);
}
