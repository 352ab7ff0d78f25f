#include "fkglab/fkg.hpp"

#include <algorithm>
#include <set>

namespace fkglab {

CrossingsVerdict has_unfavorable_crossings(const TransitionKernel& kernel,
                                           const std::vector<int64_t>& x1) {
  std::vector<int64_t> rows(x1);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (int64_t x : rows)
    if (!kernel.in_window(x))
      throw std::invalid_argument("X1 state " + std::to_string(x) +
                                  " is outside the kernel window");

  CrossingsVerdict verdict;
  // Aligned or tied quadruples hold as identities; only crossings
  // (u1 < v1, u2 > v2) with positive left side can violate (1.3).
  for (size_t i = 0; i < rows.size(); ++i) {
    int64_t u1 = rows[i];
    const auto& succ_u = kernel.row(u1);
    for (size_t j = i + 1; j < rows.size(); ++j) {
      int64_t v1 = rows[j];
      const auto& succ_v = kernel.row(v1);
      for (const auto& [u2, pu] : succ_u) {
        for (const auto& [v2, pv] : succ_v) {
          if (v2 >= u2) break;  // successors sorted: no more v2 < u2
          ++verdict.scanned;
          Rational lhs = pu * pv;
          const Rational* a = kernel.prob(v1, u2);  // join row
          const Rational* b = kernel.prob(u1, v2);  // meet row
          Rational rhs = (a && b) ? (*a) * (*b) : Rational(0);
          if (lhs > rhs) {
            verdict.holds = false;
            verdict.witness = CrossingsWitness{u1, u2, v1, v2, lhs, rhs};
            return verdict;
          }
        }
      }
    }
  }
  return verdict;
}

CrossingsVerdict has_unfavorable_crossings_residue(const TransitionKernel& kernel,
                                                   int64_t modulus,
                                                   int64_t residue) {
  if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
  std::vector<int64_t> x1;
  for (int64_t x = kernel.lo(); x <= kernel.hi(); ++x)
    if (((x - residue) % modulus + modulus) % modulus == 0) x1.push_back(x);
  return has_unfavorable_crossings(kernel, x1);
}

LatticeConditionVerdict fkg_lattice_condition(const AtomicMeasure& measure,
                                              size_t support_cap) {
  if (measure.support_size() > support_cap)
    throw cap_exceeded("lattice-condition scan cap exceeded: support " +
                       std::to_string(measure.support_size()) + " > cap " +
                       std::to_string(support_cap));
  const auto& atoms = measure.atoms();
  LatticeConditionVerdict verdict;
  for (size_t i = 0; i < atoms.size(); ++i) {
    const auto& [u, pu] = atoms[i];
    for (size_t j = i + 1; j < atoms.size(); ++j) {
      const auto& [v, pv] = atoms[j];
      if (comparable(u, v)) continue;  // {u∨v, u∧v} = {u, v}: automatic
      ++verdict.scanned;
      const Rational* pj = measure.find(join(u, v));
      const Rational* pm = measure.find(meet(u, v));
      Rational lhs = pu * pv;
      Rational rhs = (pj && pm) ? (*pj) * (*pm) : Rational(0);
      if (rhs < lhs) {
        verdict.holds = false;
        verdict.witness = LatticePairWitness{
            u, v, pu, pv, pj ? *pj : Rational(0), pm ? *pm : Rational(0)};
        return verdict;
      }
    }
  }
  return verdict;
}

LogConcavityVerdict is_log_concave(const IncrementLaw& law) {
  if (law.degenerate()) return LogConcavityVerdict{};
  const int64_t a = law.span_gcd();
  const int64_t lo = law.min_support(), hi = law.max_support();

  // Interior zeros on the lattice aZ+b break log-concavity regardless of the
  // neighbor pattern (the log is -inf between finite values).
  for (int64_t w = lo + a; w < hi; w += a) {
    if (law.prob(w) == 0) {
      int64_t left = w - a;
      while (law.prob(left) == 0) left -= a;
      int64_t right = w + a;
      while (law.prob(right) == 0) right += a;
      return LogConcavityVerdict{false, LogConcavityWitness{left, w, right, true}};
    }
  }
  for (int64_t w = lo + a; w < hi; w += a) {
    Rational mid = law.prob(w);
    if (mid * mid < law.prob(w - a) * law.prob(w + a))
      return LogConcavityVerdict{false, LogConcavityWitness{w - a, w, w + a, false}};
  }
  return LogConcavityVerdict{};
}

std::pair<int64_t, int64_t> support_gcd(const IncrementLaw& law) {
  return {law.span_gcd(), law.residue()};
}

namespace {

std::vector<int64_t> forward_supports_step(const TransitionKernel& kernel,
                                           const std::vector<int64_t>& current,
                                           int step) {
  std::set<int64_t> next;
  for (int64_t x : current) {
    if (!kernel.in_window(x))
      throw window_escape("support escapes window at step " + std::to_string(step) +
                          ": state " + std::to_string(x));
    for (const auto& [y, p] : kernel.row(x)) next.insert(y);
  }
  return {next.begin(), next.end()};
}

}  // namespace

H1Report check_H1(const TransitionKernel& kernel, int64_t start, int n) {
  if (n < 1) throw std::invalid_argument("check_H1: n must be >= 1");
  if (!kernel.in_window(start))
    throw std::invalid_argument("check_H1: start outside the kernel window");
  H1Report report;
  std::vector<int64_t> support{start};
  for (int k = 0; k < n; ++k) {
    for (int64_t x : support)
      if (!kernel.in_window(x))
        throw window_escape("support escapes window at step " + std::to_string(k) +
                            ": state " + std::to_string(x));
    H1StepReport step;
    step.step = k;
    step.support = support;
    step.verdict = has_unfavorable_crossings(kernel, support);
    report.holds = report.holds && step.verdict.holds;
    report.steps.push_back(std::move(step));
    if (k + 1 < n) support = forward_supports_step(kernel, support, k);
  }
  return report;
}

namespace {

// Lexicographically smallest positive-probability path start -> target in k0
// steps, or nullopt. Backward reachability prunes the greedy forward walk.
std::optional<std::vector<int64_t>> reach_path(const TransitionKernel& kernel,
                                               int64_t start, int64_t target,
                                               int k0) {
  std::vector<std::set<int64_t>> can_reach(k0 + 1);
  can_reach[k0].insert(target);
  for (int j = k0 - 1; j >= 0; --j) {
    for (int64_t x = kernel.lo(); x <= kernel.hi(); ++x) {
      for (const auto& [y, p] : kernel.row(x)) {
        if (can_reach[j + 1].count(y)) {
          can_reach[j].insert(x);
          break;
        }
      }
    }
  }
  if (!can_reach[0].count(start)) return std::nullopt;
  std::vector<int64_t> path;
  int64_t x = start;
  for (int j = 0; j < k0; ++j) {
    bool advanced = false;
    for (const auto& [y, p] : kernel.row(x)) {
      if (can_reach[j + 1].count(y)) {
        path.push_back(y);
        x = y;
        advanced = true;
        break;
      }
    }
    if (!advanced) return std::nullopt;
  }
  return path;
}

}  // namespace

CounterexamplePaths construct_counterexample_paths(const TransitionKernel& kernel,
                                                   int64_t start, int m_cap) {
  if (!kernel.increments())
    throw std::invalid_argument(
        "counterexample construction requires a random-walk kernel "
        "(translation-invariant rows)");
  const IncrementLaw& law = *kernel.increments();
  if (!kernel.in_window(start))
    throw std::invalid_argument("start outside the kernel window");

  // Precondition: the kernel must actually fail crossings somewhere.
  bool fails_somewhere = false;
  for (int64_t b = 0; b < law.span_gcd() && !fails_somewhere; ++b)
    fails_somewhere =
        !has_unfavorable_crossings_residue(kernel, law.span_gcd(), b).holds;
  if (!fails_somewhere)
    throw std::invalid_argument(
        "kernel has unfavorable crossings on every residue class; no "
        "counterexample exists");

  // Find the first step k0 whose marginal support carries a crossings
  // violation; its witness states are then reachable by construction.
  std::optional<CrossingsWitness> witness;
  int k0 = 0;
  std::vector<int64_t> support{start};
  for (int k = 1; k < m_cap && !witness; ++k) {
    support = forward_supports_step(kernel, support, k - 1);
    bool escaped = false;
    for (int64_t x : support) escaped = escaped || !kernel.in_window(x);
    if (escaped)
      throw std::runtime_error(
          "witness states unreachable: the marginal support escapes the "
          "window before a violation appears; enlarge the window");
    CrossingsVerdict verdict = has_unfavorable_crossings(kernel, support);
    if (!verdict.holds) {
      witness = verdict.witness;
      k0 = k;
    }
  }
  if (!witness)
    throw std::runtime_error(
        "crossings fail on a residue class but no witness is reachable "
        "from this start within the cap");

  auto prefix_u = reach_path(kernel, start, witness->u1, k0);
  auto prefix_v = reach_path(kernel, start, witness->v1, k0);
  if (!prefix_u || !prefix_v)
    throw std::runtime_error("witness states unreachable within the window");

  CounterexamplePaths out;
  out.witness = *witness;
  out.k0 = k0;
  out.u = *prefix_u;
  out.v = *prefix_v;

  const int64_t du = witness->u2 - witness->u1;  // upward crossing increment
  const int64_t dv = witness->v2 - witness->v1;  // downward crossing increment

  // Exact running products for the four path probabilities.
  Rational p_u(1), p_v(1), p_join(1), p_meet(1);
  int64_t ju = start, jv = start, jj = start, jm = start;  // previous states
  auto extend = [&](int64_t nu, int64_t nv) {
    int64_t nj = std::max(nu, nv), nm = std::min(nu, nv);
    p_u *= law.prob(nu - ju);
    p_v *= law.prob(nv - jv);
    p_join *= law.prob(nj - jj);
    p_meet *= law.prob(nm - jm);
    ju = nu;
    jv = nv;
    jj = nj;
    jm = nm;
  };
  for (int j = 0; j < k0; ++j) extend((*prefix_u)[j], (*prefix_v)[j]);

  for (int m = k0 + 1; m <= m_cap; ++m) {
    bool even = ((m - 1 - k0) % 2) == 0;
    out.u.push_back(out.u.back() + (even ? du : dv));
    out.v.push_back(out.v.back() + (even ? dv : du));
    extend(out.u.back(), out.v.back());
    if (p_u == 0 || p_v == 0)
      throw std::logic_error("constructed paths lost positive probability");
    Rational ratio = (p_join * p_meet) / (p_u * p_v);
    if (ratio < 1) {
      out.ratio = ratio;
      out.m = m;
      return out;
    }
  }
  throw std::runtime_error("lattice-condition ratio did not drop below 1 within " +
                           std::to_string(m_cap) + " steps");
}

}  // namespace fkglab
