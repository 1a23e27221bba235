#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace fractalnet {

/// Seeded random source shared by every generator and heuristic.
///
/// The engine is std::mt19937_64 seeded directly with the 64-bit seed. Its
/// output sequence is fixed by the C++ standard, and the derived draws below
/// are implemented here instead of through <random> distributions (whose
/// algorithms are implementation-defined), so a seed maps to the same stream
/// on every conforming toolchain.
///
///  - uniform01():       top 53 bits of one engine word, scaled to [0, 1).
///  - bernoulli(p):      one uniform01() draw, true iff draw < p. Always
///                       consumes a word, including for p = 0 and p = 1.
///  - uniform_index(n):  rejection sampling on whole words; x % n of the
///                       first word x >= 2^64 mod n.
///  - shuffle(v):        Fisher-Yates from the back, i = size-1 .. 1, swap
///                       v[i] with v[uniform_index(i + 1)].
///  - weighted_index(w): one uniform01() draw scaled by the total weight,
///                       then a linear scan over the cumulative sums.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return static_cast<std::size_t>(x % bound);
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

  /// Index drawn with probability proportional to its weight. Weights must be
  /// non-negative with a positive sum.
  std::size_t weighted_index(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = uniform01() * total;
    double running = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      running += weights[i];
      last_positive = i;
      if (target < running) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fractalnet
