#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Deterministic random sampling. The standard <random> distributions are
// implementation-defined, so every sampler here is hand-rolled: results are
// reproducible bit-for-bit for a given seed, independent of platform library
// choices and of how work is split across threads.

namespace d2d {

// SplitMix64: tiny, fast, passes BigCrush; one isolated stream per use site.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Splittable seed derivation: stream `index` of a master seed. Used to give
// every Monte Carlo realization an isolated generator so that campaigns are
// independent of execution order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

// Exact Poisson sampler: multiplication method below mean 10, Hormann's PTRS
// transformed rejection above.
long long sample_poisson(SplitMix64& rng, double mean);

// Inverse-CDF sampling from a fixed discrete distribution (binary search on
// the cumulative table). Returns 0-based indices.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> probabilities);
  int sample(SplitMix64& rng) const;

 private:
  std::vector<double> cumulative_;
};

// Unit-mean exponential draw (e.g. Rayleigh-fading power gains).
double sample_exponential(SplitMix64& rng);

}  // namespace d2d
