#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fkglab/rational.hpp"

namespace fkglab {

// A point of the integer lattice Z^n under the product (componentwise) order.
using Point = std::vector<int64_t>;

Point join(const Point& u, const Point& v);  // componentwise max
Point meet(const Point& u, const Point& v);  // componentwise min
bool leq(const Point& u, const Point& v);    // u precedes v in the product order
bool comparable(const Point& u, const Point& v);

std::string point_to_string(const Point& p);

// Finite set of equal-dimension lattice points carrying the restricted
// componentwise order. Elements are stored lex-sorted; lex order is a linear
// extension of the product order, which the up-set enumerator relies on.
class FinitePoset {
 public:
  explicit FinitePoset(std::vector<Point> elements);

  size_t size() const { return elements_.size(); }
  size_t dimension() const { return dim_; }
  const std::vector<Point>& elements() const { return elements_; }
  const Point& element(size_t i) const { return elements_[i]; }
  // Index of p among the sorted elements, if present.
  std::optional<size_t> index_of(const Point& p) const;
  bool elem_leq(size_t i, size_t j) const { return leq(elements_[i], elements_[j]); }

 private:
  std::vector<Point> elements_;
  size_t dim_ = 0;
};

// Up-set of a FinitePoset, stored as a membership bitmask over the poset's
// canonical element order (enumeration cap keeps posets at <= 32 elements).
struct UpSet {
  uint32_t mask = 0;
  bool contains(size_t i) const { return (mask >> i) & 1u; }
};

bool upset_invariant_holds(const FinitePoset& poset, const UpSet& up);

inline constexpr size_t kDefaultUpsetElementCap = 20;

// Visits every up-set exactly once (empty and full included). Enumeration
// order is deterministic. Throws cap_exceeded when |poset| > element_cap.
void for_each_upset(const FinitePoset& poset,
                    const std::function<void(const UpSet&)>& visit,
                    size_t element_cap = kDefaultUpsetElementCap);

std::vector<UpSet> enumerate_upsets(const FinitePoset& poset,
                                    size_t element_cap = kDefaultUpsetElementCap);

struct MaxMinStability {
  bool stable = false;
  // A violating pair (u, v) with u|v or u&v outside the event.
  std::optional<std::pair<Point, Point>> witness;
};

// Checks join/meet closure of `event` (join/meet taken in Z^n).
// Requires event ⊆ ambient.
MaxMinStability is_maxmin_stable(const std::vector<Point>& event,
                                 const FinitePoset& ambient);

}  // namespace fkglab
