/*******************************************************************************
 * Seeded random source with platform-independent shuffles.
 *
 * std::shuffle and std::uniform_int_distribution are implementation-defined,
 * so results would differ between standard libraries. Everything that feeds
 * vertex selection goes through this class instead.
 *
 * @file:   random.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>

namespace ilprefine {

// SplitMix64 finalizer; used to derive independent seed streams.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Random {
public:
  explicit Random(const std::uint64_t seed) : _engine(mix_seed(seed)) {}

  std::uint64_t next() {
    return _engine();
  }

  // Uniform in [0, bound), rejection sampling.
  std::uint64_t below(const std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
      x = _engine();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T> void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

private:
  std::mt19937_64 _engine;
};

} // namespace ilprefine
