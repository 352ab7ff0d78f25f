#include <doctest.h>

#include <memory>
#include <random>

#include "fkglab/assoc.hpp"
#include "fkglab/fkg.hpp"
#include "fkglab/markov.hpp"

using namespace fkglab;

namespace {

AtomicMeasure random_measure(std::mt19937_64& rng, int64_t coord_range,
                             size_t max_atoms) {
  std::vector<Point> points;
  size_t target = 2 + rng() % (max_atoms - 1);
  while (points.size() < target) {
    Point p{static_cast<int64_t>(rng() % coord_range),
            static_cast<int64_t>(rng() % coord_range)};
    if (std::find(points.begin(), points.end(), p) == points.end())
      points.push_back(p);
  }
  long total = 0;
  std::vector<long> weights(points.size());
  for (auto& w : weights) total += (w = 1 + rng() % 12);
  std::vector<std::pair<Point, Rational>> atoms;
  for (size_t i = 0; i < points.size(); ++i)
    atoms.push_back({points[i], make_rational(weights[i], total)});
  return AtomicMeasure(2, std::move(atoms));
}

}  // namespace

TEST_CASE("association oracle basics") {
  // Totally ordered support: always associated.
  AtomicMeasure chain(1, {{{0}, make_rational(1, 4)},
                          {{3}, make_rational(1, 4)},
                          {{9}, make_rational(1, 2)}});
  CHECK(is_associated_bruteforce(chain).associated);

  // Uniform on the antichain {(0,1),(1,0)}: Cov(1_{x1>=1}, 1_{x2>=1}) = -1/4.
  AtomicMeasure anti(2, {{{0, 1}, make_rational(1, 2)},
                         {{1, 0}, make_rational(1, 2)}});
  AssocVerdict verdict = is_associated_bruteforce(anti);
  CHECK_FALSE(verdict.associated);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->covariance == make_rational(-1, 4));

  // Product of two 1-d measures.
  AtomicMeasure product(2, {{{0, 0}, make_rational(1, 4)},
                            {{0, 1}, make_rational(1, 4)},
                            {{1, 0}, make_rational(1, 4)},
                            {{1, 1}, make_rational(1, 4)}});
  CHECK(is_associated_bruteforce(product).associated);

  std::vector<std::pair<Point, Rational>> big;
  for (int64_t i = 0; i < 24; ++i) big.push_back({{i}, make_rational(1, 24)});
  CHECK_THROWS_AS(is_associated_bruteforce(AtomicMeasure(1, std::move(big))),
                  cap_exceeded);
}

TEST_CASE("oracle agrees with exhaustive 3-valued monotone functions") {
  // Monotone f: support -> {0,1,2} are exactly 1_{U1} + 1_{U2} with nested
  // up-sets U2 ⊆ U1; a strictly larger class than the indicator pairs.
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 40; ++trial) {
    AtomicMeasure m = random_measure(rng, 3, 5);
    std::vector<Point> support;
    std::vector<Rational> weights;
    for (const auto& [p, w] : m.atoms()) {
      support.push_back(p);
      weights.push_back(w);
    }
    FinitePoset poset(support);
    std::vector<UpSet> upsets = enumerate_upsets(poset);

    std::vector<std::pair<uint32_t, uint32_t>> functions;  // (U1, U2 ⊆ U1)
    for (const UpSet& u1 : upsets)
      for (const UpSet& u2 : upsets)
        if ((u2.mask & u1.mask) == u2.mask) functions.push_back({u1.mask, u2.mask});

    auto value = [&](const std::pair<uint32_t, uint32_t>& f, size_t i) {
      return Rational(((f.first >> i) & 1u) + ((f.second >> i) & 1u));
    };
    bool all_nonneg = true;
    for (const auto& f : functions) {
      for (const auto& g : functions) {
        Rational e_fg(0), e_f(0), e_g(0);
        for (size_t i = 0; i < support.size(); ++i) {
          e_fg += weights[i] * value(f, i) * value(g, i);
          e_f += weights[i] * value(f, i);
          e_g += weights[i] * value(g, i);
        }
        if (e_fg < e_f * e_g) {
          all_nonneg = false;
          break;
        }
      }
      if (!all_nonneg) break;
    }
    CHECK(is_associated_bruteforce(m).associated == all_nonneg);
  }
}

TEST_CASE("lattice condition implies association on random measures") {
  std::mt19937_64 rng(808);
  int lattice_holds = 0;
  for (int trial = 0; trial < 200; ++trial) {
    AtomicMeasure m = random_measure(rng, 3, 6);
    if (!fkg_lattice_condition(m).holds) continue;
    ++lattice_holds;
    CHECK(is_associated_bruteforce(m).associated);
  }
  CHECK(lattice_holds > 10);  // the implication was actually exercised
}

TEST_CASE("associated measure failing the lattice condition (pinned)") {
  AtomicMeasure fixture(2, {{{0, 0}, make_rational(3, 10)},
                            {{0, 1}, make_rational(1, 10)},
                            {{1, 0}, make_rational(1, 10)},
                            {{2, 2}, make_rational(1, 2)}});
  CHECK(is_associated_bruteforce(fixture).associated);
  auto lattice = fkg_lattice_condition(fixture);
  CHECK_FALSE(lattice.holds);
  REQUIRE(lattice.witness.has_value());
  // The witness is the antichain pair whose join (1,1) has zero mass.
  CHECK(lattice.witness->p_join == 0);
}

namespace {
Sampler bridge_sampler(int n, int64_t half_width) {
  TransitionKernel kernel =
      kernel_from_increments(lazy_srw(Rational(0)), -half_width, half_width);
  auto sampler = std::make_shared<ConditionedSampler>(
      condition_on_event(ChainSpec{kernel, 0, n}, PathEvent::bridge(0)));
  return [sampler](RngStream& rng) {
    auto path = (*sampler)(rng);
    return std::vector<double>(path.begin(), path.end());
  };
}
}  // namespace

TEST_CASE("mc covariance: exact zeros, positive variance, determinism") {
  Sampler sampler = bridge_sampler(8, 10);
  IncreasingFunctional constant =
      IncreasingFunctional::user_asserted("const", [](std::span<const double>) {
        return 3.5;
      });
  CovarianceReport zero = mc_covariance(sampler, constant,
                                        IncreasingFunctional::terminal(), 500, 1);
  CHECK(zero.estimate == 0.0);
  CHECK(zero.ci_lower <= zero.estimate);
  CHECK(zero.ci_upper >= zero.estimate);

  IncreasingFunctional mid = IncreasingFunctional::coordinate(3);
  CovarianceReport variance = mc_covariance(sampler, mid, mid, 20000, 2);
  CHECK(variance.estimate > 0);
  CHECK(variance.ci_lower > 0);

  CovarianceReport a = mc_covariance(sampler, mid, IncreasingFunctional::terminal(),
                                     5000, 77);
  CovarianceReport b = mc_covariance(sampler, mid, IncreasingFunctional::terminal(),
                                     5000, 77);
  CHECK(a.estimate == b.estimate);  // bit-identical per seed
  CHECK(a.stderr_est == b.stderr_est);
  CHECK(a.ci_lower == b.ci_lower);
  CHECK(a.ci_upper == b.ci_upper);

  // Thread count must not change the report.
  CovarianceReport c = mc_covariance(sampler, mid, IncreasingFunctional::terminal(),
                                     5000, 77, kDefaultCiLevel, 4);
  CHECK(a.estimate == c.estimate);
  CHECK(a.ci_upper == c.ci_upper);
}

TEST_CASE("association probe: plants and independence") {
  Sampler sampler = bridge_sampler(8, 10);

  // Anti-monotone plant: flipping the sign of a positively correlated
  // functional must witness a violation.
  std::vector<IncreasingFunctional> planted{
      IncreasingFunctional::coordinate(3),
      IncreasingFunctional::user_asserted("neg_midpoint",
                                          [](std::span<const double> x) {
                                            return -x[3];
                                          })};
  ProbeResult plant = association_probe(sampler, planted, 20000, 5);
  CHECK(plant.violation_witnessed);
  // The spot check catches the planted anti-monotone functional.
  REQUIRE(plant.spot_check_failures.size() == 1);
  CHECK(plant.spot_check_failures[0] == "neg_midpoint");

  // Independent coordinates of a product sampler: CI straddles zero.
  Sampler product = [](RngStream& rng) {
    return std::vector<double>{rng.uniform(), rng.uniform()};
  };
  ProbeResult indep = association_probe(
      product,
      {IncreasingFunctional::coordinate(0), IncreasingFunctional::coordinate(1)},
      50000, 6);
  CHECK_FALSE(indep.violation_witnessed);
  CHECK(indep.reports[0].ci_lower < 0);
  CHECK(indep.reports[0].ci_upper > 0);

  // A bridge with structurally monotone functionals stays consistent.
  ProbeResult bridge = association_probe(
      sampler,
      {IncreasingFunctional::coordinate(3), IncreasingFunctional::running_max(),
       IncreasingFunctional::terminal_average(0.25)},
      20000, 7);
  CHECK_FALSE(bridge.violation_witnessed);
}

TEST_CASE("mixing associated starts keeps probes consistent") {
  // Start uniform on {0, 2} (1-d, hence associated), bridge path shifted by
  // the start: the mixture must not witness a violation.
  TransitionKernel kernel = kernel_from_increments(lazy_srw(Rational(0)), -12, 12);
  auto bridge = std::make_shared<ConditionedSampler>(
      condition_on_event(ChainSpec{kernel, 0, 8}, PathEvent::bridge(0)));
  Sampler mixture = [bridge](RngStream& rng) {
    int64_t start = rng.uniform() < 0.5 ? 0 : 2;
    auto path = (*bridge)(rng);
    std::vector<double> out;
    for (int64_t x : path) out.push_back(static_cast<double>(x + start));
    return out;
  };
  ProbeResult probe = association_probe(
      mixture,
      {IncreasingFunctional::coordinate(3), IncreasingFunctional::running_max(),
       IncreasingFunctional::terminal_average(0.5)},
      20000, 8);
  CHECK_FALSE(probe.violation_witnessed);
}

TEST_CASE("pushforwards along monotone maps") {
  // Two-step product measure pushed through partial sums: both associated.
  IncrementLaw law = lazy_srw(make_rational(1, 3));
  std::vector<std::pair<Point, Rational>> atoms;
  for (const auto& [z1, w1] : law.pmf())
    for (const auto& [z2, w2] : law.pmf()) atoms.push_back({{z1, z2}, w1 * w2});
  AtomicMeasure product(2, std::move(atoms));

  PushforwardCheck sums = pushforward_check(product, MonotoneMap::partial_sums());
  CHECK(sums.source_associated);
  CHECK(sums.image_associated);
  CHECK(sums.implication_holds);

  // The pushforward itself equals the walk's exact path law.
  AtomicMeasure walk_law = exact_path_law(
      ChainSpec{kernel_from_increments(law, -3, 3), 0, 2});
  AtomicMeasure pushed = pushforward(product, MonotoneMap::partial_sums());
  REQUIRE(pushed.support_size() == walk_law.support_size());
  for (size_t i = 0; i < pushed.atoms().size(); ++i) {
    CHECK(pushed.atoms()[i].first == walk_law.atoms()[i].first);
    CHECK(pushed.atoms()[i].second == walk_law.atoms()[i].second);
  }

  CHECK(pushforward_check(product, MonotoneMap::identity()).implication_holds);
  PushforwardCheck proj =
      pushforward_check(product, MonotoneMap::coordinate_subset({1}));
  CHECK(proj.image_associated);  // 1-d image is always associated

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    AtomicMeasure m = random_measure(rng, 3, 6);
    CHECK(pushforward_check(m, MonotoneMap::partial_sums()).implication_holds);
    CHECK(pushforward_check(m, MonotoneMap::coordinate_subset({0})).implication_holds);
    CHECK(pushforward_check(m, MonotoneMap::translate({1, -2})).implication_holds);
  }
}
