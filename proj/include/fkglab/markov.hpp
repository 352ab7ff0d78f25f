#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fkglab/fkg.hpp"
#include "fkglab/lattice.hpp"
#include "fkglab/measure.hpp"
#include "fkglab/rng.hpp"

namespace fkglab {

inline constexpr size_t kDefaultPathCap = 100000;

struct ChainSpec {
  TransitionKernel kernel;
  int64_t start = 0;
  int steps = 1;  // n >= 1
};

// Right-continuous step function on [0,T], used for time-dependent barriers.
struct StepFunction {
  std::vector<double> times;   // ascending, first entry 0
  std::vector<double> values;  // value on [times[i], times[i+1])
  double at(double t) const;
  static StepFunction constant(double v);
};

// Conditioning event over the n-step trajectory (X_1..X_n). All kinds except
// ExplicitPaths compile to per-step admissible sets (a product event, hence
// max/min-stable by construction); ExplicitPaths is an arbitrary finite path
// set checked by enumeration.
struct PathEvent {
  enum class Kind {
    Bridge,        // X_n = endpoint
    Excursion,     // X_k >= floor for k=1..n-1, X_n = endpoint
    Meander,       // X_k >= floor for k=1..n
    Interval,      // lower(t_k) <= X_k <= upper(t_k), t_k = kT/n
    FullSpace,     // no constraint
    CustomPerStep, // explicit per-step admissible sets
    ExplicitPaths  // explicit list of trajectories
  };
  Kind kind = Kind::FullSpace;
  int64_t endpoint = 0;
  int64_t floor = 0;
  StepFunction lower, upper;  // Interval
  double horizon = 1.0;       // T for Interval barrier sampling
  std::vector<std::vector<int64_t>> allowed;  // CustomPerStep, steps 1..n
  std::vector<std::vector<int64_t>> paths;    // ExplicitPaths

  static PathEvent bridge(int64_t endpoint);
  static PathEvent excursion(int64_t endpoint = 0, int64_t floor_value = 0);
  static PathEvent meander(int64_t floor_value = 0);
  static PathEvent interval(StepFunction lower, StepFunction upper,
                            double horizon = 1.0);
  static PathEvent full_space();
  static PathEvent custom_per_step(std::vector<std::vector<int64_t>> allowed);
  static PathEvent explicit_paths(std::vector<std::vector<int64_t>> paths);

  bool per_step_product() const { return kind != Kind::ExplicitPaths; }
  // Admissible state set at step k (1..n), intersected with [lo_col, hi_col].
  std::vector<int64_t> admissible(int k, int n, int64_t lo_col, int64_t hi_col) const;
  // Coordinate-level admissibility (product kinds only).
  bool admits(int k, int n, int64_t x) const;
  bool contains(const std::vector<int64_t>& path, int n) const;
};

// Exact conditional distribution of the n-step chain given the event,
// stored as backward tables h_k(x) = P(remaining path admissible | X_k = x).
struct ConditionedPathLaw {
  ChainSpec chain;
  PathEvent event;
  // h[k], k = 0..n: h[n] is the terminal indicator; h[0] holds only start.
  std::vector<std::map<int64_t, Rational>> h;
  Rational total;  // P(A) = h[0](start) > 0

  // ExplicitPaths events skip the DP and carry the renormalized path list.
  bool explicit_mode = false;
  std::vector<std::pair<std::vector<int64_t>, Rational>> explicit_law;

  // Conditional one-step transition q_k(x,y) = p(x,y) h_{k+1}(y) / h_k(x).
  std::vector<std::pair<int64_t, Rational>> conditional_row(int k, int64_t x) const;
  // Full conditional law as an AtomicMeasure on Z^n (paths as lattice points).
  AtomicMeasure conditional_law(size_t path_cap = kDefaultPathCap) const;
};

// Exact positive-probability support of X_k for k = 1..n.
std::vector<std::vector<int64_t>> marginal_supports(const ChainSpec& chain);

// Exact n-step path law as an AtomicMeasure on Z^n.
AtomicMeasure exact_path_law(const ChainSpec& chain,
                             size_t path_cap = kDefaultPathCap);

// Builds the backward tables; throws std::invalid_argument when P(A) = 0
// (H2 requires a positive-probability event).
ConditionedPathLaw condition_on_event(const ChainSpec& chain, const PathEvent& event);

// Join/meet closure of the event. Per-step-product kinds carry an analytic
// certificate; when the path space is enumerable within the cap the explicit
// closure check runs as well and the two must agree.
MaxMinStability event_maxmin_stable(const PathEvent& event, const ChainSpec& chain,
                                    size_t path_cap = kDefaultPathCap);

// Forward simulator over the h-reweighted transitions. CDF tables are built
// once; each trajectory consumes one uniform per step (one per trajectory in
// explicit mode), in ascending successor order.
class ConditionedSampler {
 public:
  explicit ConditionedSampler(const ConditionedPathLaw& law);
  std::vector<int64_t> operator()(RngStream& rng) const;

 private:
  int steps_;
  int64_t start_;
  bool explicit_mode_;
  std::vector<std::pair<std::vector<int64_t>, double>> explicit_cdf_;
  std::vector<std::map<int64_t, std::pair<std::vector<int64_t>, std::vector<double>>>>
      rows_;
};

// i.i.d. trajectories by forward h-reweighted simulation; path i draws from
// stream (seed, i).
std::vector<std::vector<int64_t>> sample_conditioned(const ConditionedPathLaw& law,
                                                     uint64_t seed, size_t count);

// Mixture over a random start: start drawn from start_law (one uniform),
// then the per-start sampler produces the trajectory.
using StartSampler =
    std::function<std::vector<int64_t>(int64_t start, RngStream& rng)>;
std::vector<std::vector<int64_t>> sample_with_random_start(
    const AtomicMeasure& start_law, const StartSampler& sampler, uint64_t seed,
    size_t count);

}  // namespace fkglab
