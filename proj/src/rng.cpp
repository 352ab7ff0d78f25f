#include "fkglab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fkglab {

uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(uint64_t seed, uint64_t stream) {
  uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  std::seed_seq seq{static_cast<uint32_t>(splitmix64_next(s)),
                    static_cast<uint32_t>(splitmix64_next(s)),
                    static_cast<uint32_t>(splitmix64_next(s)),
                    static_cast<uint32_t>(splitmix64_next(s)),
                    static_cast<uint32_t>(splitmix64_next(s)),
                    static_cast<uint32_t>(splitmix64_next(s)),
                    static_cast<uint32_t>(splitmix64_next(s)),
                    static_cast<uint32_t>(splitmix64_next(s))};
  gen_.seed(seq);
}

uint64_t RngStream::next_bits() { return gen_(); }

double RngStream::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log1p(-u1));  // 1-u1 in (0,1]
  return r * std::cos(2.0 * M_PI * u2);
}

long RngStream::poisson(double mean) {
  if (mean < 0 || !std::isfinite(mean))
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  long total = 0;
  // exp(-mean) underflows past ~700; split into independent chunks.
  while (mean > 30.0) {
    total += poisson(30.0);
    mean -= 30.0;
  }
  double limit = std::exp(-mean);
  double prod = 1.0;
  long k = -1;
  do {
    ++k;
    prod *= uniform();
  } while (prod > limit);
  return total + k;
}

}  // namespace fkglab
