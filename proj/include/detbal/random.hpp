#pragma once

#include <cstdint>
#include <random>

namespace detbal {

/// std::mt19937_64 with uniform variates built directly from the raw 64-bit
/// output (top 53 bits), so sequences are identical on every standard
/// library. std::uniform_real_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// (0, 1)
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  /// [-1, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }
  /// 0..n-1
  std::size_t below(std::size_t n) {
    const auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return k < n ? k : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Seed of chain `index` under `master`: mix64(master ^ mix64(index)).
constexpr std::uint64_t chain_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index));
}

}  // namespace detbal
