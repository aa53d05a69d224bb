#ifndef MBSV_RNG_HPP_
#define MBSV_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

// Seeded, portable randomness.  mt19937_64 output is fully specified by the
// standard; the draw helpers below avoid std::*_distribution, whose mapping
// from engine output to values is implementation-defined.  Together they make
// every simulation reproducible bit-for-bit across platforms and compilers.

namespace mbsv::rng {

// Stream tags keep the truth sampler, the fault injector, and the campaign
// fault picker on decorrelated sequences even when they share one seed.
inline constexpr std::uint64_t kStreamSample = 0x53414d50;  // "SAMP"
inline constexpr std::uint64_t kStreamInject = 0x494e4a54;  // "INJT"
inline constexpr std::uint64_t kStreamFaults = 0x46415554;  // "FAUT"
inline constexpr std::uint64_t kStreamOracle = 0x4f52434c;  // "ORCL"

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

/// Uniform double in [0, 1) using the top 53 bits of one engine output.
inline double next_unit(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection sampling; n must be positive.
inline int next_index(std::mt19937_64& g, int n) {
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

/// Index drawn with probability proportional to weights[i]; weights must be
/// non-negative with a positive sum.
inline int pick_weighted(std::mt19937_64& g, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double u = next_unit(g) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

}  // namespace mbsv::rng

#endif  // MBSV_RNG_HPP_
