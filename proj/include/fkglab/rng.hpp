#pragma once

#include <cstdint>
#include <random>

namespace fkglab {

// Generator family recorded in every stochastic report. Streams are derived
// from (seed, stream) with splitmix64, so sample i is independent of batching
// and thread count.
inline constexpr const char* kGeneratorFamily = "mt19937_64+splitmix64-streams";

uint64_t splitmix64_next(uint64_t& state);

class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream);

  uint64_t next_bits();
  // Uniform in [0,1) from the top 53 bits; one call consumes one variate.
  double uniform();
  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double gaussian();
  // Poisson count by Knuth's product-of-uniforms, chunked for large means.
  long poisson(double mean);

 private:
  std::mt19937_64 gen_;
};

}  // namespace fkglab
