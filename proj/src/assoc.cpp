#include "fkglab/assoc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "fkglab/stats.hpp"

namespace fkglab {

namespace {

// Byte-sliced subset sums: sum over the bits of a mask in three lookups.
template <typename T>
struct SubsetSums {
  std::vector<T> table[3];
  explicit SubsetSums(const std::vector<T>& weights) {
    size_t n = weights.size();
    for (int t = 0; t < 3; ++t) {
      size_t base = static_cast<size_t>(t) * 8;
      size_t width = n > base ? std::min<size_t>(8, n - base) : 0;
      table[t].assign(size_t{1} << width, T(0));
      for (size_t m = 1; m < table[t].size(); ++m) {
        size_t low = m & (m - 1);
        size_t bit = base + static_cast<size_t>(std::countr_zero(m & ~low));
        table[t][m] = table[t][low] + weights[bit];
      }
    }
  }
  T sum(uint32_t mask) const {
    T acc = table[0][mask & 0xff];
    if (table[1].size() > 1) acc = acc + table[1][(mask >> 8) & 0xff];
    if (table[2].size() > 1) acc = acc + table[2][(mask >> 16) & 0xff];
    return acc;
  }
};

}  // namespace

AssocVerdict is_associated_bruteforce(const AtomicMeasure& measure,
                                      size_t support_cap, uint64_t pair_budget) {
  if (measure.support_size() > support_cap)
    throw cap_exceeded("association oracle cap exceeded: support " +
                       std::to_string(measure.support_size()) + " > cap " +
                       std::to_string(support_cap));
  std::vector<Point> support;
  std::vector<Rational> weights;
  for (const auto& [p, w] : measure.atoms()) {
    support.push_back(p);
    weights.push_back(w);
  }
  FinitePoset poset(std::move(support));  // lex order matches atom order

  std::vector<UpSet> upsets = enumerate_upsets(poset, support_cap);
  AssocVerdict verdict;
  verdict.upset_count = upsets.size();
  uint64_t pairs = static_cast<uint64_t>(upsets.size()) * (upsets.size() - 1) / 2;
  if (pairs > pair_budget)
    throw cap_exceeded("association oracle pair budget exceeded: " +
                       std::to_string(pairs) + " up-set pairs");

  // Common denominator; when it fits, covariances reduce to 128-bit integer
  // comparisons L*S(U&V) >= S(U)*S(V).
  BigInt lcm(1);
  for (const auto& w : weights) {
    BigInt den = w.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  bool fast = lcm.fits_slong_p() ||
              (mpz_sizeinbase(lcm.get_mpz_t(), 2) <= 62);

  if (fast) {
    uint64_t L = mpz_get_ui(lcm.get_mpz_t());
    std::vector<uint64_t> scaled(weights.size());
    for (size_t i = 0; i < weights.size(); ++i) {
      BigInt v = weights[i].get_num() * (lcm / weights[i].get_den());
      scaled[i] = mpz_get_ui(v.get_mpz_t());
    }
    SubsetSums<uint64_t> sums(scaled);
    std::vector<uint64_t> totals(upsets.size());
    for (size_t i = 0; i < upsets.size(); ++i) totals[i] = sums.sum(upsets[i].mask);
    for (size_t i = 0; i < upsets.size(); ++i) {
      for (size_t j = i + 1; j < upsets.size(); ++j) {
        ++verdict.pairs_scanned;
        unsigned __int128 lhs =
            static_cast<unsigned __int128>(L) * sums.sum(upsets[i].mask & upsets[j].mask);
        unsigned __int128 rhs =
            static_cast<unsigned __int128>(totals[i]) * totals[j];
        if (lhs < rhs) {
          verdict.associated = false;
          Rational cov =
              make_rational(BigInt(sums.sum(upsets[i].mask & upsets[j].mask)), lcm) -
              make_rational(BigInt(totals[i]), lcm) * make_rational(BigInt(totals[j]), lcm);
          verdict.witness = AssocWitness{upsets[i], upsets[j], cov};
          return verdict;
        }
      }
    }
    return verdict;
  }

  SubsetSums<Rational> sums(weights);
  std::vector<Rational> totals(upsets.size());
  for (size_t i = 0; i < upsets.size(); ++i) totals[i] = sums.sum(upsets[i].mask);
  for (size_t i = 0; i < upsets.size(); ++i) {
    for (size_t j = i + 1; j < upsets.size(); ++j) {
      ++verdict.pairs_scanned;
      Rational cov = sums.sum(upsets[i].mask & upsets[j].mask) - totals[i] * totals[j];
      if (cov < 0) {
        verdict.associated = false;
        verdict.witness = AssocWitness{upsets[i], upsets[j], cov};
        return verdict;
      }
    }
  }
  return verdict;
}

IncreasingFunctional IncreasingFunctional::coordinate(size_t index) {
  return {"coordinate[" + std::to_string(index) + "]", true,
          [index](std::span<const double> x) {
            if (index >= x.size())
              throw std::invalid_argument("coordinate index out of range");
            return x[index];
          }};
}

IncreasingFunctional IncreasingFunctional::terminal() {
  return {"terminal", true, [](std::span<const double> x) {
            if (x.empty()) throw std::invalid_argument("empty path");
            return x.back();
          }};
}

IncreasingFunctional IncreasingFunctional::running_max() {
  return {"running_max", true, [](std::span<const double> x) {
            return *std::max_element(x.begin(), x.end());
          }};
}

IncreasingFunctional IncreasingFunctional::running_min() {
  return {"running_min", true, [](std::span<const double> x) {
            return *std::min_element(x.begin(), x.end());
          }};
}

IncreasingFunctional IncreasingFunctional::time_average() {
  return {"time_average", true, [](std::span<const double> x) {
            return std::accumulate(x.begin(), x.end(), 0.0) /
                   static_cast<double>(x.size());
          }};
}

IncreasingFunctional IncreasingFunctional::terminal_average(double fraction) {
  if (!(fraction > 0 && fraction <= 1))
    throw std::invalid_argument("terminal_average: fraction in (0,1]");
  return {"terminal_average[" + std::to_string(fraction) + "]", true,
          [fraction](std::span<const double> x) {
            size_t k = static_cast<size_t>(
                std::ceil(fraction * static_cast<double>(x.size())));
            if (k == 0) k = 1;
            double acc = 0;
            for (size_t i = x.size() - k; i < x.size(); ++i) acc += x[i];
            return acc / static_cast<double>(k);
          }};
}

IncreasingFunctional IncreasingFunctional::weighted_sum(std::vector<double> weights) {
  for (double w : weights)
    if (w < 0)
      throw std::invalid_argument("weighted_sum: weights must be nonnegative");
  return {"weighted_sum", true, [weights](std::span<const double> x) {
            if (x.size() != weights.size())
              throw std::invalid_argument("weighted_sum: length mismatch");
            double acc = 0;
            for (size_t i = 0; i < x.size(); ++i) acc += weights[i] * x[i];
            return acc;
          }};
}

IncreasingFunctional IncreasingFunctional::user_asserted(
    std::string name, std::function<double(std::span<const double>)> eval) {
  return {std::move(name), false, std::move(eval)};
}

namespace {

// Deterministic parallel fill: worker t handles indices i ≡ t (mod threads),
// each index drawing from its own stream.
void parallel_samples(size_t count, int threads,
                      const std::function<void(size_t)>& fill) {
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) fill(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (size_t i = static_cast<size_t>(t); i < count;
           i += static_cast<size_t>(threads))
        fill(i);
    });
  }
  for (auto& th : pool) th.join();
}

CovarianceReport covariance_from_values(const std::vector<double>& fs,
                                        const std::vector<double>& gs,
                                        const std::string& f_name,
                                        const std::string& g_name, uint64_t seed,
                                        double level) {
  size_t n = fs.size();
  double fbar = std::accumulate(fs.begin(), fs.end(), 0.0) / static_cast<double>(n);
  double gbar = std::accumulate(gs.begin(), gs.end(), 0.0) / static_cast<double>(n);
  std::vector<double> h(n);
  for (size_t i = 0; i < n; ++i) h[i] = (fs[i] - fbar) * (gs[i] - gbar);
  double hsum = std::accumulate(h.begin(), h.end(), 0.0);
  double est = hsum / static_cast<double>(n - 1);
  double hbar = hsum / static_cast<double>(n);
  double var_h = 0;
  for (double v : h) var_h += (v - hbar) * (v - hbar);
  var_h /= static_cast<double>(n - 1);
  double se = std::sqrt(var_h / static_cast<double>(n));
  double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
  CovarianceReport r;
  r.f_name = f_name;
  r.g_name = g_name;
  r.estimate = est;
  r.stderr_est = se;
  r.ci_lower = est - z * se;
  r.ci_upper = est + z * se;
  r.level = level;
  r.samples = n;
  r.seed = seed;
  return r;
}

}  // namespace

CovarianceReport mc_covariance(const Sampler& sampler, const IncreasingFunctional& f,
                               const IncreasingFunctional& g, size_t samples,
                               uint64_t seed, double level, int threads) {
  if (samples < 100)
    throw std::invalid_argument("mc_covariance: need at least 100 samples");
  if (!(level > 0 && level < 1))
    throw std::invalid_argument("mc_covariance: level must be in (0,1)");
  std::vector<double> fs(samples), gs(samples);
  parallel_samples(samples, threads, [&](size_t i) {
    RngStream rng(seed, i);
    std::vector<double> x = sampler(rng);
    fs[i] = f.eval(x);
    gs[i] = g.eval(x);
  });
  return covariance_from_values(fs, gs, f.name, g.name, seed, level);
}

ProbeResult association_probe(const Sampler& sampler,
                              const std::vector<IncreasingFunctional>& family,
                              size_t samples, uint64_t seed, double level,
                              int threads) {
  if (family.size() < 2)
    throw std::invalid_argument("association_probe: need at least two functionals");
  if (samples < 100)
    throw std::invalid_argument("association_probe: need at least 100 samples");

  ProbeResult result;
  size_t pairs = family.size() * (family.size() - 1) / 2;
  result.corrected_level = 1.0 - (1.0 - level) / static_cast<double>(pairs);

  // Evaluate the whole family on a single shared sample set.
  std::vector<std::vector<double>> values(family.size(),
                                          std::vector<double>(samples));
  parallel_samples(samples, threads, [&](size_t i) {
    RngStream rng(seed, i);
    std::vector<double> x = sampler(rng);
    for (size_t k = 0; k < family.size(); ++k) values[k][i] = family[k].eval(x);
  });

  // Spot-check user-asserted monotonicity on dominated pairs x <= x + bump.
  for (size_t k = 0; k < family.size(); ++k) {
    if (family[k].structural) continue;
    for (size_t trial = 0; trial < 32; ++trial) {
      RngStream rng(seed, (uint64_t{1} << 62) + trial);
      std::vector<double> x = sampler(rng);
      std::vector<double> y = x;
      for (double& v : y)
        if (rng.uniform() < 0.5) v += 1.0;
      if (family[k].eval(x) > family[k].eval(y) + 1e-12) {
        result.spot_check_failures.push_back(family[k].name);
        break;
      }
    }
  }

  for (size_t a = 0; a < family.size(); ++a) {
    for (size_t b = a + 1; b < family.size(); ++b) {
      CovarianceReport r =
          covariance_from_values(values[a], values[b], family[a].name,
                                 family[b].name, seed, result.corrected_level);
      if (r.ci_upper < 0) result.violation_witnessed = true;
      result.reports.push_back(std::move(r));
    }
  }
  return result;
}

MonotoneMap MonotoneMap::identity() { return MonotoneMap{}; }

MonotoneMap MonotoneMap::partial_sums() {
  MonotoneMap m;
  m.kind = Kind::PartialSums;
  return m;
}

MonotoneMap MonotoneMap::coordinate_subset(std::vector<size_t> indices) {
  if (indices.empty())
    throw std::invalid_argument("coordinate_subset: need at least one index");
  MonotoneMap m;
  m.kind = Kind::CoordinateSubset;
  m.indices = std::move(indices);
  return m;
}

MonotoneMap MonotoneMap::translate(Point shift) {
  MonotoneMap m;
  m.kind = Kind::Translate;
  m.shift = std::move(shift);
  return m;
}

Point MonotoneMap::apply(const Point& p) const {
  switch (kind) {
    case Kind::Identity:
      return p;
    case Kind::PartialSums: {
      Point out(p.size());
      int64_t acc = 0;
      for (size_t i = 0; i < p.size(); ++i) out[i] = (acc += p[i]);
      return out;
    }
    case Kind::CoordinateSubset: {
      Point out;
      out.reserve(indices.size());
      for (size_t i : indices) {
        if (i >= p.size())
          throw std::invalid_argument("coordinate_subset: index out of range");
        out.push_back(p[i]);
      }
      return out;
    }
    case Kind::Translate: {
      if (shift.size() != p.size())
        throw std::invalid_argument("translate: dimension mismatch");
      Point out(p.size());
      for (size_t i = 0; i < p.size(); ++i) out[i] = p[i] + shift[i];
      return out;
    }
  }
  return p;
}

size_t MonotoneMap::output_dimension(size_t input_dimension) const {
  return kind == Kind::CoordinateSubset ? indices.size() : input_dimension;
}

AtomicMeasure pushforward(const AtomicMeasure& measure, const MonotoneMap& map) {
  std::map<Point, Rational> image;
  for (const auto& [p, w] : measure.atoms()) image[map.apply(p)] += w;
  std::vector<std::pair<Point, Rational>> atoms(image.begin(), image.end());
  return AtomicMeasure(map.output_dimension(measure.dimension()), std::move(atoms));
}

PushforwardCheck pushforward_check(const AtomicMeasure& measure,
                                   const MonotoneMap& map, size_t support_cap,
                                   uint64_t pair_budget) {
  PushforwardCheck out;
  out.source_associated =
      is_associated_bruteforce(measure, support_cap, pair_budget).associated;
  out.image_associated =
      is_associated_bruteforce(pushforward(measure, map), support_cap, pair_budget)
          .associated;
  out.implication_holds = !out.source_associated || out.image_associated;
  return out;
}

}  // namespace fkglab
