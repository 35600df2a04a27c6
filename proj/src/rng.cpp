#include "d2d/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d2d {

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  SplitMix64 mixer(master_seed ^ (0x9E3779B97F4A7C15ull * (index + 1ull)));
  mixer.next_u64();
  return mixer.next_u64();
}

namespace {

// Hormann's PTRS transformed-rejection Poisson sampler, exact for mean >= 10.
long long poisson_ptrs(SplitMix64& rng, double mean) {
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = rng.next_double() - 0.5;
    const double v = rng.next_double();
    const double us = 0.5 - std::abs(u);
    const double k_real = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(k_real);
    if (k_real < 0.0 || (us < 0.013 && v > us)) continue;
    const long long k = static_cast<long long>(k_real);
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs =
        static_cast<double>(k) * log_mean - mean - std::lgamma(static_cast<double>(k) + 1.0);
    if (lhs <= rhs) return k;
  }
}

// Multiplication method, exact for small means.
long long poisson_small(SplitMix64& rng, double mean) {
  const double limit = std::exp(-mean);
  long long k = 0;
  double product = 1.0;
  do {
    ++k;
    product *= rng.next_double();
  } while (product > limit);
  return k - 1;
}

}  // namespace

long long sample_poisson(SplitMix64& rng, double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("sample_poisson: mean must be >= 0");
  if (mean == 0.0) return 0;
  return mean < 10.0 ? poisson_small(rng, mean) : poisson_ptrs(rng, mean);
}

DiscreteSampler::DiscreteSampler(std::span<const double> probabilities) {
  if (probabilities.empty())
    throw std::invalid_argument("DiscreteSampler: empty distribution");
  cumulative_.reserve(probabilities.size());
  double total = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw std::invalid_argument("DiscreteSampler: negative probability");
    total += p;
    cumulative_.push_back(total);
  }
  if (!(total > 0.0)) throw std::invalid_argument("DiscreteSampler: zero total mass");
  for (double& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

int DiscreteSampler::sample(SplitMix64& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return static_cast<int>(cumulative_.size()) - 1;
  return static_cast<int>(it - cumulative_.begin());
}

double sample_exponential(SplitMix64& rng) {
  // next_double() < 1, so the argument stays strictly positive.
  return -std::log(1.0 - rng.next_double());
}

}  // namespace d2d
