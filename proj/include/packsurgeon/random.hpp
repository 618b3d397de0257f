#pragma once

#include <cstdint>
#include <limits>

namespace packsurgeon {

/// Counter-based generator keyed by (seed, stream). Output `i` depends only on
/// the key and `i`, so independent streams can be handed to parallel workers
/// and reproduce the sequential result exactly.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Child generator for sub-stream `key`; does not advance this one.
  [[nodiscard]] CounterRng split(std::uint64_t key) const;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  bool bernoulli(double p);
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  CounterRng(std::uint64_t key, std::uint64_t counter, int);

  std::uint64_t key_;
  std::uint64_t counter_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace packsurgeon
