#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gdesign {

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  /// |mean - target| <= k * stderr, with an absolute floor for zero-variance estimates.
  bool within(double target, double k = 5.0, double floor = 1e-9) const;
};

/// Sum in a fixed binary-tree order; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

/// Mean and standard error from per-sample values (pairwise summation).
MomentEstimate estimate(std::span<const double> values, std::uint64_t seed = 0);

/// Process-wide worker cap; 0 means hardware concurrency.
void set_max_threads(unsigned threads);
unsigned max_threads();

/// Runs body(i) for i in [0, count) on up to max_threads() workers. The body
/// must write only to index-owned storage.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gdesign
