#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fkglab/measure.hpp"

namespace fkglab {

inline constexpr size_t kDefaultSupportCap = 5000;
inline constexpr int kDefaultCounterexampleCap = 64;

// Witness of a crossings violation:
//   p(u1,u2) p(v1,v2) > p(u1|v1, u2|v2) p(u1&v1, u2&v2).
struct CrossingsWitness {
  int64_t u1, u2, v1, v2;
  Rational lhs, rhs;
};

struct CrossingsVerdict {
  bool holds = true;
  std::optional<CrossingsWitness> witness;
  uint64_t scanned = 0;
};

// Decides whether the kernel has X1-unfavorable crossings: for all
// u1,v1 in X1 and u2,v2 columns, crossing transitions are jointly no more
// likely than their monotone rearrangement. Only crossing configurations
// (u1<v1 with u2>v2) with nonzero left side are scanned; the rest holdper
// the identity of both sides. The witness, if any, is the lexicographically
// first violating quadruple. Requires X1 ⊆ window.
CrossingsVerdict has_unfavorable_crossings(const TransitionKernel& kernel,
                                           const std::vector<int64_t>& x1);

// X1 = (modulus·Z + residue) ∩ window.
CrossingsVerdict has_unfavorable_crossings_residue(const TransitionKernel& kernel,
                                                   int64_t modulus, int64_t residue);

struct LatticePairWitness {
  Point u, v;
  Rational p_u, p_v, p_join, p_meet;
};

struct LatticeConditionVerdict {
  bool holds = true;
  std::optional<LatticePairWitness> witness;
  uint64_t scanned = 0;
};

// FKG lattice condition P(u∨v)P(u∧v) >= P(u)P(v), quantified over pairs of
// positive-weight atoms (comparable pairs hold identically and are skipped).
// Exact; witness is the lex-first failing pair. Throws cap_exceeded when the
// support is larger than support_cap.
LatticeConditionVerdict fkg_lattice_condition(const AtomicMeasure& measure,
                                              size_t support_cap = kDefaultSupportCap);

struct LogConcavityWitness {
  int64_t left, mid, right;  // p_mid^2 < p_left * p_right on the support lattice
  bool gap = false;          // mid is an interior zero between positive atoms
};

struct LogConcavityVerdict {
  bool holds = true;
  std::optional<LogConcavityWitness> witness;
};

// k ↦ p_k log-concave on aZ+b: the support must be an interval of the
// lattice (interior zeros fail) and p_w^2 >= p_{w-a} p_{w+a} inside it.
LogConcavityVerdict is_log_concave(const IncrementLaw& law);

// (a, b) with Supp ⊆ aZ+b, a maximal; (1, atom) for point masses.
std::pair<int64_t, int64_t> support_gcd(const IncrementLaw& law);

struct H1StepReport {
  int step = 0;  // k: crossings are checked with X1 = Supp(P_{X_k})
  std::vector<int64_t> support;
  CrossingsVerdict verdict;
};

struct H1Report {
  bool holds = true;
  std::vector<H1StepReport> steps;
};

// (H1): for k = 0..n-1 the kernel has Supp(P_{X_k})-unfavorable crossings,
// supports computed by exact forward propagation from `start`.
H1Report check_H1(const TransitionKernel& kernel, int64_t start, int n);

struct CounterexamplePaths {
  std::vector<int64_t> u, v;  // paths (x_1..x_m) from the common start
  Rational ratio;             // P(u∨v)P(u∧v) / [P(u)P(v)] < 1
  int m = 0;
  int k0 = 0;  // step at which the crossing witness is planted
  CrossingsWitness witness;
};

// Realizes a crossings failure as an explicit lattice-condition failure of
// the m-step path law: plants the witness at the first step where both of
// its states are reachable, then alternates the two witness increments so
// the paths cross every step. m is the smallest length (<= m_cap) at which
// the ratio drops below 1. Requires a random-walk kernel that fails
// Z-crossings somewhere reachable.
CounterexamplePaths construct_counterexample_paths(
    const TransitionKernel& kernel, int64_t start,
    int m_cap = kDefaultCounterexampleCap);

}  // namespace fkglab
