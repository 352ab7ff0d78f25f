#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fkglab/lattice.hpp"
#include "fkglab/rational.hpp"

namespace fkglab {

inline constexpr int kDefaultSigDigits = 30;

// Finitely supported probability measure on Z^n with exact rational weights.
// Atoms are lex-sorted, strictly positive, and sum to exactly 1.
class AtomicMeasure {
 public:
  AtomicMeasure(size_t dimension, std::vector<std::pair<Point, Rational>> atoms);

  size_t dimension() const { return dim_; }
  const std::vector<std::pair<Point, Rational>>& atoms() const { return atoms_; }
  size_t support_size() const { return atoms_.size(); }
  // Weight of p; exact zero when p is not an atom.
  Rational prob(const Point& p) const;
  const Rational* find(const Point& p) const;

 private:
  size_t dim_;
  std::vector<std::pair<Point, Rational>> atoms_;
};

// One-step increment distribution on Z: finite pmf plus the support
// arithmetic (a, b) with Supp ⊆ aZ + b, a the gcd of support differences.
class IncrementLaw {
 public:
  explicit IncrementLaw(std::vector<std::pair<int64_t, Rational>> pmf);

  const std::vector<std::pair<int64_t, Rational>>& pmf() const { return pmf_; }
  Rational prob(int64_t z) const;
  std::vector<int64_t> support() const;
  int64_t min_support() const { return pmf_.front().first; }
  int64_t max_support() const { return pmf_.back().first; }

  int64_t span_gcd() const { return a_; }  // a (1 for point masses)
  int64_t residue() const { return b_; }   // b; the atom itself when degenerate
  bool degenerate() const { return pmf_.size() == 1; }

  // Law as a 1-dimensional AtomicMeasure.
  AtomicMeasure as_measure() const;

  // Free-form note recorded by the named constructors (e.g. truncation of an
  // infinite family); echoed into reports.
  std::string note;

 private:
  std::vector<std::pair<int64_t, Rational>> pmf_;
  int64_t a_ = 1;
  int64_t b_ = 0;
};

// P(z) ∝ e^{-beta |z|} on {-K..K}; the ratio e^{-beta} is rounded to
// sig_digits significant decimal digits, then weights are exact powers of
// that rounded ratio, renormalized exactly.
IncrementLaw discrete_laplace(const Rational& beta, int truncation,
                              int sig_digits = kDefaultSigDigits);
// Same family with the ratio r = e^{-beta} supplied exactly (0 < r < 1).
IncrementLaw discrete_laplace_ratio(const Rational& ratio, int truncation);

// (1-gamma)/2 (δ_{-1} + δ_{+1}) + gamma δ_0, gamma in [0,1].
IncrementLaw lazy_srw(const Rational& gamma);

// P(z) ∝ (1+|z|)^{-alpha} on {-K..K}, K >= 2; weights exact for integer
// alpha, otherwise rounded per-atom to sig_digits significant digits.
IncrementLaw power_law(const Rational& alpha, int truncation,
                       int sig_digits = kDefaultSigDigits);

// Markov transition kernel on an integer interval window [lo, hi]. Rows are
// indexed by window states; successor states may overhang the window (they
// are valid columns, but walking onto them is a window escape).
class TransitionKernel {
 public:
  TransitionKernel(int64_t lo, int64_t hi,
                   std::vector<std::vector<std::pair<int64_t, Rational>>> rows,
                   std::optional<IncrementLaw> increments = std::nullopt);

  int64_t lo() const { return lo_; }
  int64_t hi() const { return hi_; }
  bool in_window(int64_t x) const { return x >= lo_ && x <= hi_; }
  // Sorted successor list of x; throws window_escape when x is not a row.
  const std::vector<std::pair<int64_t, Rational>>& row(int64_t x) const;
  // p_{x,y}; nullptr when zero. x must be a row state.
  const Rational* prob(int64_t x, int64_t y) const;
  std::vector<int64_t> states() const;

  // Set when the kernel is a random-walk kernel built from an increment law.
  const std::optional<IncrementLaw>& increments() const { return increments_; }

 private:
  int64_t lo_, hi_;
  std::vector<std::vector<std::pair<int64_t, Rational>>> rows_;
  std::optional<IncrementLaw> increments_;
};

// Random-walk kernel p_{x,y} = law(y-x) for x in [lo, hi].
TransitionKernel kernel_from_increments(const IncrementLaw& law, int64_t lo,
                                        int64_t hi);

}  // namespace fkglab
