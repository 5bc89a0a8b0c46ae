#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace irg {

// Counter-based random streams. Every random quantity in the library is drawn
// from a stream keyed by (master seed, tags...), so results never depend on
// scheduling or thread count.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a substream key from a parent key and a list of tags.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(parent + kGolden);
  std::uint64_t k = 1;
  for (std::uint64_t t : tags) {
    h = mix64(h ^ mix64(t + k * kGolden));
    ++k;
  }
  return h;
}

/// SplitMix64 viewed as a counter-based generator: output k is mix64(key + k*golden).
class Stream {
 public:
  using result_type = std::uint64_t;

  constexpr explicit Stream(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1); safe to take logs of.
  double uniform_open() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

  /// Uniform integer in [0, bound) by Lemire's multiply-shift (tiny bias is irrelevant here).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace irg
