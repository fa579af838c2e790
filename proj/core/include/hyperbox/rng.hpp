#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hyperbox {

/// SplitMix64 generator. Used instead of <random> engines so that seeded
/// splits, bootstraps and shuffles are reproducible independent of the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, bound) via rejection sampling.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~0ull - ~0ull % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  /// Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_;
};

/// Decorrelated child seed for stream `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  Rng r(master + 0x9e3779b97f4a7c15ull * (index + 1));
  return r.next();
}

}  // namespace hyperbox
