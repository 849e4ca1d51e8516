#pragma once

#include <cstdint>
#include <limits>

namespace gdesign {

/// xoshiro256** seeded through splitmix64. Streams derived from
/// (seed, index) are independent of scheduling.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);
  /// Deterministic stream for sample `index` of a run seeded by `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();
  /// Uniform double in [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t uniform_int(std::uint64_t bound);

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gdesign
