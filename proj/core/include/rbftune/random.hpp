#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace rbftune {

/// splitmix64 finalizer; used to derive independent seeds for sub-streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic generator with portable draws. The standard distributions
// are implementation-defined, so the mapping to doubles and integers is done
// here to keep outputs identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // (lo, hi]
  double uniform_left_open(double lo, double hi) { return hi - (hi - lo) * uniform01(); }

  // [0, n), unbiased
  std::size_t below(std::size_t n);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rbftune
