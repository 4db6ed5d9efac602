#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace angledim {

// SplitMix64 finalizer. Used only to turn task indices into seed offsets
// with good avalanche behaviour.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream derivation rule: child_seed = parent_seed XOR splitmix64(task).
// Derivation is position-independent, so parallel workers can build their
// own streams from (seed, task_index) and reproduce serial output exactly.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t task) noexcept {
  return seed ^ splitmix64(task);
}

// Seeded random stream: a mt19937_64 engine plus explicit uniform/normal
// transforms, so the same seed yields the same doubles everywhere. The
// standard distribution objects are avoided on purpose: their output
// sequences are implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  // Independent child stream for subtask `task`; does not disturb this
  // stream's state.
  RngStream derive(std::uint64_t task) const { return RngStream(mix_seed(seed_, task)); }

  // Uniform on [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log argument.
  double uniform01_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller. Pairs are generated together; the spare
  // is cached, so draws come in a fixed order regardless of call pattern.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01_pos()));
    const double t = 2.0 * std::numbers::pi * uniform01();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("RngStream::below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  // Fisher-Yates shuffle. std::shuffle is not used because its result is
  // unspecified across standard library implementations.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::uint64_t i = items.size(); i > 1; --i) {
      const std::uint64_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace angledim
