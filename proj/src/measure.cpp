#include "fkglab/measure.hpp"

#include <algorithm>
#include <numeric>

namespace fkglab {

AtomicMeasure::AtomicMeasure(size_t dimension,
                             std::vector<std::pair<Point, Rational>> atoms)
    : dim_(dimension) {
  if (dim_ == 0) throw std::invalid_argument("measure dimension must be >= 1");
  Rational total(0);
  for (auto& [point, weight] : atoms) {
    if (point.size() != dim_)
      throw std::invalid_argument("atom dimension mismatch");
    if (weight < 0) throw std::invalid_argument("atom weight must be >= 0");
    total += weight;
  }
  if (total != 1)
    throw std::invalid_argument("atom weights must sum to exactly 1, got " +
                                to_fraction_string(total));
  atoms_.reserve(atoms.size());
  for (auto& a : atoms)
    if (a.second > 0) atoms_.push_back(std::move(a));  // zero atoms are not stored
  std::sort(atoms_.begin(), atoms_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i].first == atoms_[i - 1].first)
      throw std::invalid_argument("duplicate atom " + point_to_string(atoms_[i].first));
  if (atoms_.empty()) throw std::invalid_argument("measure has empty support");
}

const Rational* AtomicMeasure::find(const Point& p) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), p,
      [](const auto& atom, const Point& q) { return atom.first < q; });
  if (it != atoms_.end() && it->first == p) return &it->second;
  return nullptr;
}

Rational AtomicMeasure::prob(const Point& p) const {
  const Rational* w = find(p);
  return w ? *w : Rational(0);
}

IncrementLaw::IncrementLaw(std::vector<std::pair<int64_t, Rational>> pmf) {
  Rational total(0);
  for (auto& [z, w] : pmf) {
    if (w < 0) throw std::invalid_argument("increment weight must be >= 0");
    total += w;
  }
  if (total != 1)
    throw std::invalid_argument("increment weights must sum to exactly 1");
  for (auto& e : pmf)
    if (e.second > 0) pmf_.push_back(e);
  std::sort(pmf_.begin(), pmf_.end());
  for (size_t i = 1; i < pmf_.size(); ++i)
    if (pmf_[i].first == pmf_[i - 1].first)
      throw std::invalid_argument("duplicate increment atom");
  if (pmf_.empty()) throw std::invalid_argument("increment law has empty support");

  if (pmf_.size() == 1) {
    a_ = 1;
    b_ = pmf_[0].first;  // degenerate: flag the atom itself
  } else {
    int64_t g = 0;
    for (size_t i = 1; i < pmf_.size(); ++i)
      g = std::gcd(g, pmf_[i].first - pmf_[0].first);
    a_ = g;
    b_ = ((pmf_[0].first % a_) + a_) % a_;
    // a is maximal by construction; confirm divisibility exhaustively.
    for (const auto& [z, w] : pmf_)
      if (((z - b_) % a_) != 0)
        throw std::logic_error("support gcd metadata inconsistent");
  }
}

Rational IncrementLaw::prob(int64_t z) const {
  auto it = std::lower_bound(pmf_.begin(), pmf_.end(), z,
                             [](const auto& e, int64_t v) { return e.first < v; });
  if (it != pmf_.end() && it->first == z) return it->second;
  return Rational(0);
}

std::vector<int64_t> IncrementLaw::support() const {
  std::vector<int64_t> out;
  out.reserve(pmf_.size());
  for (const auto& [z, w] : pmf_) out.push_back(z);
  return out;
}

AtomicMeasure IncrementLaw::as_measure() const {
  std::vector<std::pair<Point, Rational>> atoms;
  atoms.reserve(pmf_.size());
  for (const auto& [z, w] : pmf_) atoms.push_back({Point{z}, w});
  return AtomicMeasure(1, std::move(atoms));
}

namespace {

IncrementLaw normalized_symmetric(const std::vector<Rational>& raw, int k,
                                  std::string note) {
  // raw[j] is the unnormalized weight of |z| = j, j = 0..k.
  Rational total = raw[0];
  for (int j = 1; j <= k; ++j) total += 2 * raw[j];
  std::vector<std::pair<int64_t, Rational>> pmf;
  for (int z = -k; z <= k; ++z) pmf.push_back({z, raw[std::abs(z)] / total});
  IncrementLaw law(std::move(pmf));
  law.note = std::move(note);
  return law;
}

}  // namespace

IncrementLaw discrete_laplace_ratio(const Rational& ratio, int truncation) {
  if (!(ratio > 0 && ratio < 1))
    throw std::invalid_argument("discrete_laplace: ratio must be in (0,1)");
  if (truncation < 1)
    throw std::invalid_argument("discrete_laplace: truncation must be >= 1");
  std::vector<Rational> raw(truncation + 1);
  raw[0] = 1;
  for (int j = 1; j <= truncation; ++j) raw[j] = raw[j - 1] * ratio;
  return normalized_symmetric(raw, truncation,
                              "discrete Laplace truncated at K=" +
                                  std::to_string(truncation) +
                                  "; normalizing constant is for the "
                                  "truncated law");
}

IncrementLaw discrete_laplace(const Rational& beta, int truncation, int sig_digits) {
  if (beta <= 0) throw std::invalid_argument("discrete_laplace: beta must be > 0");
  return discrete_laplace_ratio(rational_exp_neg(beta, sig_digits), truncation);
}

IncrementLaw lazy_srw(const Rational& gamma) {
  if (gamma < 0 || gamma > 1)
    throw std::invalid_argument("lazy_srw: gamma must be in [0,1]");
  Rational half = (1 - gamma) / 2;
  std::vector<std::pair<int64_t, Rational>> pmf{{-1, half}, {0, gamma}, {1, half}};
  return IncrementLaw(std::move(pmf));
}

IncrementLaw power_law(const Rational& alpha, int truncation, int sig_digits) {
  if (alpha <= 1) throw std::invalid_argument("power_law: alpha must be > 1");
  if (truncation < 2)
    throw std::invalid_argument(
        "power_law: truncation must be >= 2 (three support points are needed "
        "to witness the crossings failure)");
  std::vector<Rational> raw(truncation + 1);
  for (int j = 0; j <= truncation; ++j)
    raw[j] = rational_neg_power(1 + j, alpha, sig_digits);
  return normalized_symmetric(raw, truncation,
                              "power law truncated at K=" +
                                  std::to_string(truncation) +
                                  "; normalizing constant is for the "
                                  "truncated law");
}

TransitionKernel::TransitionKernel(
    int64_t lo, int64_t hi,
    std::vector<std::vector<std::pair<int64_t, Rational>>> rows,
    std::optional<IncrementLaw> increments)
    : lo_(lo), hi_(hi), rows_(std::move(rows)), increments_(std::move(increments)) {
  if (hi_ < lo_) throw std::invalid_argument("kernel window is empty");
  if (rows_.size() != static_cast<size_t>(hi_ - lo_ + 1))
    throw std::invalid_argument("kernel needs one row per window state");
  for (auto& row : rows_) {
    std::sort(row.begin(), row.end());
    Rational total(0);
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i].second < 0) throw std::invalid_argument("negative kernel entry");
      if (i > 0 && row[i].first == row[i - 1].first)
        throw std::invalid_argument("duplicate kernel column");
      total += row[i].second;
    }
    if (total != 1) throw std::invalid_argument("kernel row must sum to exactly 1");
    std::erase_if(row, [](const auto& e) { return e.second == 0; });
  }
}

const std::vector<std::pair<int64_t, Rational>>& TransitionKernel::row(
    int64_t x) const {
  if (!in_window(x))
    throw window_escape("state " + std::to_string(x) + " is outside the window [" +
                        std::to_string(lo_) + "," + std::to_string(hi_) + "]");
  return rows_[static_cast<size_t>(x - lo_)];
}

const Rational* TransitionKernel::prob(int64_t x, int64_t y) const {
  const auto& r = row(x);
  auto it = std::lower_bound(r.begin(), r.end(), y,
                             [](const auto& e, int64_t v) { return e.first < v; });
  if (it != r.end() && it->first == y) return &it->second;
  return nullptr;
}

std::vector<int64_t> TransitionKernel::states() const {
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(hi_ - lo_ + 1));
  for (int64_t x = lo_; x <= hi_; ++x) out.push_back(x);
  return out;
}

TransitionKernel kernel_from_increments(const IncrementLaw& law, int64_t lo,
                                        int64_t hi) {
  if (hi < lo) throw std::invalid_argument("kernel window is empty");
  std::vector<std::vector<std::pair<int64_t, Rational>>> rows;
  rows.reserve(static_cast<size_t>(hi - lo + 1));
  for (int64_t x = lo; x <= hi; ++x) {
    std::vector<std::pair<int64_t, Rational>> row;
    for (const auto& [z, w] : law.pmf()) row.push_back({x + z, w});
    rows.push_back(std::move(row));
  }
  return TransitionKernel(lo, hi, std::move(rows), law);
}

}  // namespace fkglab
