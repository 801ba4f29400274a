#ifndef WILLTEST_RANDOM_HPP
#define WILLTEST_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace willtest {

using Rng = std::mt19937_64;

// Uniform double in [0,1) from the top 53 bits. Avoids
// std::uniform_real_distribution, whose output is implementation-defined;
// seeded runs must reproduce bit-identically.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// splitmix64; decorrelates per-round streams derived from one user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

// First k entries of a partial Fisher-Yates shuffle of 0..n-1.
inline std::vector<int> sample_without_replacement(Rng& rng, int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample size out of range");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_index(rng, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace willtest

#endif  // WILLTEST_RANDOM_HPP
