#include "fkglab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace fkglab {

double StepFunction::at(double t) const {
  if (times.empty()) throw std::invalid_argument("empty step function");
  if (t < times.front()) throw std::invalid_argument("step function queried before 0");
  size_t i = 0;
  while (i + 1 < times.size() && times[i + 1] <= t) ++i;
  return values[i];
}

StepFunction StepFunction::constant(double v) { return StepFunction{{0.0}, {v}}; }

PathEvent PathEvent::bridge(int64_t endpoint) {
  PathEvent e;
  e.kind = Kind::Bridge;
  e.endpoint = endpoint;
  return e;
}

PathEvent PathEvent::excursion(int64_t endpoint, int64_t floor_value) {
  PathEvent e;
  e.kind = Kind::Excursion;
  e.endpoint = endpoint;
  e.floor = floor_value;
  if (endpoint < floor_value)
    throw std::invalid_argument("excursion endpoint below the floor");
  return e;
}

PathEvent PathEvent::meander(int64_t floor_value) {
  PathEvent e;
  e.kind = Kind::Meander;
  e.floor = floor_value;
  return e;
}

PathEvent PathEvent::interval(StepFunction lower, StepFunction upper, double horizon) {
  PathEvent e;
  e.kind = Kind::Interval;
  e.lower = std::move(lower);
  e.upper = std::move(upper);
  e.horizon = horizon;
  if (horizon <= 0) throw std::invalid_argument("interval event horizon must be > 0");
  return e;
}

PathEvent PathEvent::full_space() { return PathEvent{}; }

PathEvent PathEvent::custom_per_step(std::vector<std::vector<int64_t>> allowed) {
  PathEvent e;
  e.kind = Kind::CustomPerStep;
  e.allowed = std::move(allowed);
  for (auto& s : e.allowed) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw std::invalid_argument("empty per-step admissible set");
  }
  return e;
}

PathEvent PathEvent::explicit_paths(std::vector<std::vector<int64_t>> paths) {
  PathEvent e;
  e.kind = Kind::ExplicitPaths;
  e.paths = std::move(paths);
  if (e.paths.empty()) throw std::invalid_argument("empty explicit path set");
  std::sort(e.paths.begin(), e.paths.end());
  e.paths.erase(std::unique(e.paths.begin(), e.paths.end()), e.paths.end());
  return e;
}

std::vector<int64_t> PathEvent::admissible(int k, int n, int64_t lo_col,
                                           int64_t hi_col) const {
  if (k < 1 || k > n) throw std::invalid_argument("admissible: step out of range");
  std::vector<int64_t> out;
  for (int64_t x = lo_col; x <= hi_col; ++x)
    if (admits(k, n, x)) out.push_back(x);
  return out;
}

bool PathEvent::admits(int k, int n, int64_t x) const {
  if (k < 1 || k > n) throw std::invalid_argument("admits: step out of range");
  switch (kind) {
    case Kind::FullSpace:
      return true;
    case Kind::Bridge:
      return k != n || x == endpoint;
    case Kind::Excursion:
      return k == n ? x == endpoint : x >= floor;
    case Kind::Meander:
      return x >= floor;
    case Kind::Interval: {
      double t = horizon * static_cast<double>(k) / static_cast<double>(n);
      return static_cast<double>(x) >= lower.at(t) &&
             static_cast<double>(x) <= upper.at(t);
    }
    case Kind::CustomPerStep:
      if (allowed.size() != static_cast<size_t>(n))
        throw std::invalid_argument("custom event needs one admissible set per step");
      return std::binary_search(allowed[k - 1].begin(), allowed[k - 1].end(), x);
    case Kind::ExplicitPaths:
      throw std::logic_error("explicit path events have no per-step test");
  }
  return false;
}

bool PathEvent::contains(const std::vector<int64_t>& path, int n) const {
  if (path.size() != static_cast<size_t>(n)) return false;
  if (kind == Kind::ExplicitPaths)
    return std::binary_search(paths.begin(), paths.end(), path);
  for (int k = 1; k <= n; ++k)
    if (!admits(k, n, path[k - 1])) return false;
  return true;
}

namespace {

void check_chain(const ChainSpec& chain) {
  if (chain.steps < 1) throw std::invalid_argument("chain horizon must be >= 1");
  if (!chain.kernel.in_window(chain.start))
    throw std::invalid_argument("chain start outside the kernel window");
}

}  // namespace

std::vector<std::vector<int64_t>> marginal_supports(const ChainSpec& chain) {
  check_chain(chain);
  std::vector<std::vector<int64_t>> out;
  std::vector<int64_t> current{chain.start};
  for (int k = 1; k <= chain.steps; ++k) {
    std::set<int64_t> next;
    for (int64_t x : current) {
      if (!chain.kernel.in_window(x))
        throw window_escape("support escapes window at step " + std::to_string(k) +
                            ": state " + std::to_string(x));
      for (const auto& [y, p] : chain.kernel.row(x)) next.insert(y);
    }
    current.assign(next.begin(), next.end());
    out.push_back(current);
  }
  return out;
}

namespace {

// Shared DFS over positive-probability trajectories; `filter` may be null.
void enumerate_paths(const ChainSpec& chain,
                     const std::function<bool(int k, int64_t x)>& admissible,
                     size_t path_cap,
                     const std::function<void(const std::vector<int64_t>&,
                                              const Rational&)>& emit) {
  std::vector<int64_t> path(chain.steps);
  size_t produced = 0;
  auto rec = [&](auto&& self, int k, int64_t x, const Rational& weight) -> void {
    if (k == chain.steps) {
      if (++produced > path_cap)
        throw cap_exceeded("path enumeration cap exceeded (cap " +
                           std::to_string(path_cap) + ")");
      emit(path, weight);
      return;
    }
    if (!chain.kernel.in_window(x))
      throw window_escape("trajectory leaves the window at state " +
                          std::to_string(x));
    for (const auto& [y, p] : chain.kernel.row(x)) {
      if (admissible && !admissible(k + 1, y)) continue;
      path[k] = y;
      self(self, k + 1, y, weight * p);
    }
  };
  rec(rec, 0, chain.start, Rational(1));
}

}  // namespace

AtomicMeasure exact_path_law(const ChainSpec& chain, size_t path_cap) {
  check_chain(chain);
  std::vector<std::pair<Point, Rational>> atoms;
  enumerate_paths(chain, nullptr, path_cap,
                  [&](const std::vector<int64_t>& path, const Rational& w) {
                    atoms.push_back({Point(path.begin(), path.end()), w});
                  });
  return AtomicMeasure(chain.steps, std::move(atoms));
}

ConditionedPathLaw condition_on_event(const ChainSpec& chain, const PathEvent& event) {
  check_chain(chain);
  const int n = chain.steps;
  ConditionedPathLaw law{chain, event, {}, Rational(0), false, {}};

  if (!event.per_step_product()) {
    // Explicit path sets: enumerate, weight, renormalize.
    law.explicit_mode = true;
    Rational total(0);
    for (const auto& p : event.paths) {
      if (p.size() != static_cast<size_t>(n))
        throw std::invalid_argument("explicit event path has wrong length");
      Rational w(1);
      int64_t x = chain.start;
      for (int64_t y : p) {
        // prob() throws window_escape when an intermediate state lacks a row.
        const Rational* q = chain.kernel.prob(x, y);
        if (!q) {
          w = 0;
          break;
        }
        w *= *q;
        x = y;
      }
      if (w > 0) law.explicit_law.push_back({p, w});
      total += w;
    }
    if (total == 0)
      throw std::invalid_argument(
          "conditioning event has probability zero (H2 fails)");
    for (auto& [p, w] : law.explicit_law) w /= total;
    law.total = total;
    return law;
  }

  // Forward reachability within the event. A positive-probability admissible
  // state outside the row window before step n is a window escape, matching
  // the enumeration route.
  std::vector<std::set<int64_t>> reach(n + 1);
  reach[0].insert(chain.start);
  for (int k = 0; k < n; ++k) {
    for (int64_t x : reach[k]) {
      for (const auto& [y, p] : chain.kernel.row(x)) {
        if (!event.admits(k + 1, n, y)) continue;
        if (k + 1 < n && !chain.kernel.in_window(y))
          throw window_escape("admissible trajectory leaves the window at state " +
                              std::to_string(y) + " (step " +
                              std::to_string(k + 1) + ")");
        reach[k + 1].insert(y);
      }
    }
  }

  law.h.assign(n + 1, {});
  for (int64_t x : reach[n]) law.h[n][x] = 1;
  for (int k = n - 1; k >= 0; --k) {
    for (int64_t x : reach[k]) {
      Rational acc(0);
      for (const auto& [y, p] : chain.kernel.row(x)) {
        auto it = law.h[k + 1].find(y);
        if (it != law.h[k + 1].end()) acc += p * it->second;
      }
      if (acc > 0) law.h[k][x] = acc;
    }
  }
  auto it = law.h[0].find(chain.start);
  law.total = it == law.h[0].end() ? Rational(0) : it->second;
  if (law.total == 0)
    throw std::invalid_argument(
        "conditioning event has probability zero (H2 fails)");
  return law;
}

std::vector<std::pair<int64_t, Rational>> ConditionedPathLaw::conditional_row(
    int k, int64_t x) const {
  if (explicit_mode)
    throw std::logic_error("explicit-path laws have no per-step transitions");
  if (k < 0 || k >= chain.steps)
    throw std::invalid_argument("conditional_row: step out of range");
  auto hx = h[k].find(x);
  if (hx == h[k].end() || hx->second == 0)
    throw std::invalid_argument("conditional_row: state has zero h");
  std::vector<std::pair<int64_t, Rational>> out;
  for (const auto& [y, p] : chain.kernel.row(x)) {
    auto it = h[k + 1].find(y);
    if (it != h[k + 1].end() && it->second > 0)
      out.push_back({y, p * it->second / hx->second});
  }
  return out;
}

AtomicMeasure ConditionedPathLaw::conditional_law(size_t path_cap) const {
  std::vector<std::pair<Point, Rational>> atoms;
  if (explicit_mode) {
    for (const auto& [p, w] : explicit_law)
      atoms.push_back({Point(p.begin(), p.end()), w});
    return AtomicMeasure(chain.steps, std::move(atoms));
  }
  auto admissible = [&](int k, int64_t x) {
    auto it = h[k].find(x);
    return it != h[k].end() && it->second > 0;
  };
  enumerate_paths(chain, admissible, path_cap,
                  [&](const std::vector<int64_t>& path, const Rational& w) {
                    atoms.push_back({Point(path.begin(), path.end()), w / total});
                  });
  return AtomicMeasure(chain.steps, std::move(atoms));
}

MaxMinStability event_maxmin_stable(const PathEvent& event, const ChainSpec& chain,
                                    size_t path_cap) {
  check_chain(chain);
  MaxMinStability enumerated;
  bool have_enumeration = false;
  try {
    AtomicMeasure full = exact_path_law(chain, path_cap);
    std::vector<Point> support;
    for (const auto& [p, w] : full.atoms()) support.push_back(p);
    FinitePoset ambient(support);
    enumerated.stable = true;
    std::vector<std::vector<int64_t>> members;
    for (const auto& [p, w] : full.atoms()) {
      std::vector<int64_t> path(p.begin(), p.end());
      if (event.contains(path, chain.steps)) members.push_back(std::move(path));
    }
    for (size_t i = 0; i < members.size() && enumerated.stable; ++i) {
      for (size_t j = i + 1; j < members.size(); ++j) {
        Point a(members[i].begin(), members[i].end());
        Point b(members[j].begin(), members[j].end());
        Point up = join(a, b), dn = meet(a, b);
        if (!event.contains(std::vector<int64_t>(up.begin(), up.end()),
                            chain.steps) ||
            !event.contains(std::vector<int64_t>(dn.begin(), dn.end()),
                            chain.steps)) {
          enumerated.stable = false;
          enumerated.witness = std::make_pair(a, b);
          break;
        }
      }
    }
    have_enumeration = true;
  } catch (const cap_exceeded&) {
    if (!event.per_step_product())
      throw;  // explicit events have no analytic certificate
  }

  if (event.per_step_product()) {
    // Per-step product events are closed under componentwise max/min: the
    // max of two members of a coordinate set is one of them.
    if (have_enumeration && !enumerated.stable)
      throw std::logic_error(
          "analytic certificate disagrees with the enumerated closure check");
    return MaxMinStability{true, std::nullopt};
  }
  return enumerated;
}

ConditionedSampler::ConditionedSampler(const ConditionedPathLaw& law)
    : steps_(law.chain.steps),
      start_(law.chain.start),
      explicit_mode_(law.explicit_mode) {
  if (explicit_mode_) {
    double acc = 0;
    for (const auto& [p, w] : law.explicit_law) {
      acc += to_double(w);
      explicit_cdf_.push_back({p, acc});
    }
    explicit_cdf_.back().second = 1.0;  // guard against rounding
    return;
  }
  rows_.resize(steps_);
  std::set<int64_t> current{start_};
  for (int k = 0; k < steps_; ++k) {
    std::set<int64_t> next;
    for (int64_t x : current) {
      auto row = law.conditional_row(k, x);
      std::vector<int64_t> ys;
      std::vector<double> cdf;
      double acc = 0;
      for (const auto& [y, q] : row) {
        acc += to_double(q);
        ys.push_back(y);
        cdf.push_back(acc);
        next.insert(y);
      }
      cdf.back() = 1.0;
      rows_[k][x] = {std::move(ys), std::move(cdf)};
    }
    current = std::move(next);
  }
}

std::vector<int64_t> ConditionedSampler::operator()(RngStream& rng) const {
  if (explicit_mode_) {
    double u = rng.uniform();
    size_t idx = std::lower_bound(explicit_cdf_.begin(), explicit_cdf_.end(), u,
                                  [](const auto& e, double v) { return e.second < v; }) -
                 explicit_cdf_.begin();
    if (idx >= explicit_cdf_.size()) idx = explicit_cdf_.size() - 1;
    return explicit_cdf_[idx].first;
  }
  std::vector<int64_t> path;
  path.reserve(steps_);
  int64_t x = start_;
  for (int k = 0; k < steps_; ++k) {
    const auto& [ys, cdf] = rows_[k].at(x);
    double u = rng.uniform();  // one uniform per step
    size_t idx = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (idx >= ys.size()) idx = ys.size() - 1;
    x = ys[idx];
    path.push_back(x);
  }
  return path;
}

std::vector<std::vector<int64_t>> sample_conditioned(const ConditionedPathLaw& law,
                                                     uint64_t seed, size_t count) {
  ConditionedSampler sampler(law);
  std::vector<std::vector<int64_t>> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    RngStream rng(seed, i);
    out.push_back(sampler(rng));
  }
  return out;
}

std::vector<std::vector<int64_t>> sample_with_random_start(
    const AtomicMeasure& start_law, const StartSampler& sampler, uint64_t seed,
    size_t count) {
  if (start_law.dimension() != 1)
    throw std::invalid_argument("start law must be 1-dimensional");
  if (!sampler) throw std::invalid_argument("missing per-start sampler");
  std::vector<int64_t> starts;
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& [p, w] : start_law.atoms()) {
    starts.push_back(p[0]);
    acc += to_double(w);
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;

  std::vector<std::vector<int64_t>> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    RngStream rng(seed, i);
    double u = rng.uniform();
    size_t idx = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (idx >= starts.size()) idx = starts.size() - 1;
    out.push_back(sampler(starts[idx], rng));
  }
  return out;
}

}  // namespace fkglab
