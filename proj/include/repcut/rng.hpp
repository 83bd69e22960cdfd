#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace repcut {

/// Counter-based SplitMix64 generator.
///
/// The n-th output of stream `stream` under `seed` is
///   mix64(key + (n + 1) * 0x9e3779b97f4a7c15),  key = mix64(seed ^ mix64(stream)),
/// where mix64 is the SplitMix64 finalizer. Sample loops give sample s its own
/// stream s, so results do not depend on evaluation order or thread count.
/// Only integer arithmetic is used, so sequences are identical across platforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed ^ mix64(stream))) {}

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_closed() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(values[i - 1], values[j]);
    }
  }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace repcut
