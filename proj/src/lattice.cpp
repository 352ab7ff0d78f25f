#include "fkglab/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fkglab {

namespace {
void check_dims(const Point& u, const Point& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("lattice points have different dimensions");
  if (u.empty()) throw std::invalid_argument("lattice points must have dimension >= 1");
}
}  // namespace

Point join(const Point& u, const Point& v) {
  check_dims(u, v);
  Point out(u.size());
  for (size_t i = 0; i < u.size(); ++i) out[i] = std::max(u[i], v[i]);
  return out;
}

Point meet(const Point& u, const Point& v) {
  check_dims(u, v);
  Point out(u.size());
  for (size_t i = 0; i < u.size(); ++i) out[i] = std::min(u[i], v[i]);
  return out;
}

bool leq(const Point& u, const Point& v) {
  check_dims(u, v);
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] > v[i]) return false;
  return true;
}

bool comparable(const Point& u, const Point& v) { return leq(u, v) || leq(v, u); }

std::string point_to_string(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) os << ",";
    os << p[i];
  }
  os << ")";
  return os.str();
}

FinitePoset::FinitePoset(std::vector<Point> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("poset must be nonempty");
  dim_ = elements_[0].size();
  if (dim_ == 0) throw std::invalid_argument("poset elements must have dimension >= 1");
  for (const auto& e : elements_)
    if (e.size() != dim_)
      throw std::invalid_argument("poset elements must share one dimension");
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
    throw std::invalid_argument("poset elements must be distinct");
}

std::optional<size_t> FinitePoset::index_of(const Point& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it != elements_.end() && *it == p)
    return static_cast<size_t>(it - elements_.begin());
  return std::nullopt;
}

bool upset_invariant_holds(const FinitePoset& poset, const UpSet& up) {
  for (size_t i = 0; i < poset.size(); ++i) {
    if (!up.contains(i)) continue;
    for (size_t j = 0; j < poset.size(); ++j)
      if (poset.elem_leq(i, j) && !up.contains(j)) return false;
  }
  return true;
}

void for_each_upset(const FinitePoset& poset,
                    const std::function<void(const UpSet&)>& visit,
                    size_t element_cap) {
  const size_t n = poset.size();
  if (n > element_cap)
    throw cap_exceeded("up-set enumeration cap exceeded: poset has " +
                       std::to_string(n) + " elements, cap " +
                       std::to_string(element_cap));
  if (n > 32) throw cap_exceeded("up-set enumeration limited to 32 elements");

  // above[i]: elements strictly above i. Lex order is a linear extension, so
  // everything above i sits at a larger index.
  std::vector<uint32_t> above(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (poset.elem_leq(i, j)) above[i] |= (1u << j);

  // Decide membership from the lex-largest element down. Element i may join
  // the up-set only if everything above it is already in.
  uint32_t mask = 0;
  auto rec = [&](auto&& self, size_t pos) -> void {
    if (pos == n) {
      visit(UpSet{mask});
      return;
    }
    size_t i = n - 1 - pos;
    self(self, pos + 1);  // i stays out
    if ((above[i] & mask) == above[i]) {
      mask |= (1u << i);
      self(self, pos + 1);
      mask &= ~(1u << i);
    }
  };
  rec(rec, 0);
}

std::vector<UpSet> enumerate_upsets(const FinitePoset& poset, size_t element_cap) {
  std::vector<UpSet> out;
  for_each_upset(poset, [&](const UpSet& u) { out.push_back(u); }, element_cap);
  return out;
}

MaxMinStability is_maxmin_stable(const std::vector<Point>& event,
                                 const FinitePoset& ambient) {
  std::set<Point> members;
  for (const auto& p : event) {
    if (!ambient.index_of(p))
      throw std::invalid_argument("event point " + point_to_string(p) +
                                  " is not in the ambient poset");
    members.insert(p);
  }
  std::vector<Point> pts(members.begin(), members.end());
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (!members.count(join(pts[i], pts[j])) || !members.count(meet(pts[i], pts[j])))
        return MaxMinStability{false, std::make_pair(pts[i], pts[j])};
    }
  }
  return MaxMinStability{true, std::nullopt};
}

}  // namespace fkglab
