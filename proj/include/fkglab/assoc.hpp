#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fkglab/lattice.hpp"
#include "fkglab/measure.hpp"
#include "fkglab/rng.hpp"

namespace fkglab {

inline constexpr uint64_t kDefaultPairBudget = 50'000'000;
inline constexpr double kDefaultCiLevel = 0.99;

struct AssocWitness {
  UpSet upset_a, upset_b;  // masks over the support poset (lex atom order)
  Rational covariance;     // Cov(1_A, 1_B) < 0, exact
};

struct AssocVerdict {
  bool associated = true;
  std::optional<AssocWitness> witness;
  size_t upset_count = 0;
  uint64_t pairs_scanned = 0;
};

// Exact association oracle: Cov(1_U, 1_V) >= 0 for every pair of up-sets of
// the support poset. Bounded increasing functions on a finite poset are
// nonnegative combinations of up-set indicators plus constants, so by
// bilinearity this decides Definition 1.1 on the support. The witness is the
// first violating pair in enumeration order.
AssocVerdict is_associated_bruteforce(const AtomicMeasure& measure,
                                      size_t support_cap = kDefaultUpsetElementCap,
                                      uint64_t pair_budget = kDefaultPairBudget);

// Monotone functional of a trajectory with a structural certificate;
// user-asserted evaluators are only spot-checked.
struct IncreasingFunctional {
  std::string name;
  bool structural = true;
  std::function<double(std::span<const double>)> eval;

  static IncreasingFunctional coordinate(size_t index);
  static IncreasingFunctional terminal();
  static IncreasingFunctional running_max();
  static IncreasingFunctional running_min();
  static IncreasingFunctional time_average();
  // Average over the last ceil(fraction * length) coordinates.
  static IncreasingFunctional terminal_average(double fraction);
  static IncreasingFunctional weighted_sum(std::vector<double> weights);  // >= 0
  static IncreasingFunctional user_asserted(
      std::string name, std::function<double(std::span<const double>)> eval);
};

using Sampler = std::function<std::vector<double>(RngStream&)>;

struct CovarianceReport {
  std::string f_name, g_name;
  double estimate = 0;
  double stderr_est = 0;
  double ci_lower = 0, ci_upper = 0;
  double level = kDefaultCiLevel;
  size_t samples = 0;
  uint64_t seed = 0;
  std::string generator = kGeneratorFamily;
};

// Unbiased sample covariance of f and g over `samples` draws (sample i from
// stream (seed, i)), with plug-in standard error and a two-sided normal CI.
// Threads partition the sample index range; per-index streams make the
// report identical for any thread count. The sampler must be safe to call
// concurrently on distinct RngStream objects.
CovarianceReport mc_covariance(const Sampler& sampler,
                               const IncreasingFunctional& f,
                               const IncreasingFunctional& g, size_t samples,
                               uint64_t seed, double level = kDefaultCiLevel,
                               int threads = 1);

struct ProbeResult {
  std::vector<CovarianceReport> reports;  // one per unordered functional pair
  bool violation_witnessed = false;       // some upper CI bound < 0
  double corrected_level = 0;             // Bonferroni over the pairs
  std::vector<std::string> spot_check_failures;  // user-asserted monotonicity
};

// Runs mc_covariance over all unordered pairs of the family at the
// Bonferroni-corrected level, on one shared sample set. Never claims
// association: the verdict is "consistent" or "violation-witnessed".
ProbeResult association_probe(const Sampler& sampler,
                              const std::vector<IncreasingFunctional>& family,
                              size_t samples, uint64_t seed,
                              double level = kDefaultCiLevel, int threads = 1);

// Structurally monotone vector maps for pushforward checks.
struct MonotoneMap {
  enum class Kind { Identity, PartialSums, CoordinateSubset, Translate };
  Kind kind = Kind::Identity;
  std::vector<size_t> indices;  // CoordinateSubset
  Point shift;                  // Translate

  static MonotoneMap identity();
  static MonotoneMap partial_sums();
  static MonotoneMap coordinate_subset(std::vector<size_t> indices);
  static MonotoneMap translate(Point shift);
  Point apply(const Point& p) const;
  size_t output_dimension(size_t input_dimension) const;
};

AtomicMeasure pushforward(const AtomicMeasure& measure, const MonotoneMap& map);

struct PushforwardCheck {
  bool source_associated = false;
  bool image_associated = false;
  bool implication_holds = true;  // source associated => image associated
};

PushforwardCheck pushforward_check(const AtomicMeasure& measure,
                                   const MonotoneMap& map,
                                   size_t support_cap = kDefaultUpsetElementCap,
                                   uint64_t pair_budget = kDefaultPairBudget);

}  // namespace fkglab
