#include "gdesign/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace gdesign {
namespace {

std::atomic<unsigned> g_threads{0};

}  // namespace

bool MomentEstimate::within(double target, double k, double floor) const {
  return std::abs(mean - target) <= k * std_error + floor;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

MomentEstimate estimate(std::span<const double> values, std::uint64_t seed) {
  MomentEstimate e;
  e.samples = values.size();
  e.seed = seed;
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  e.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> dev(values.size());
    std::transform(values.begin(), values.end(), dev.begin(),
                   [&](double x) { return (x - e.mean) * (x - e.mean); });
    const double var = pairwise_sum(dev) / (n - 1.0);
    e.std_error = std::sqrt(var / n);
  }
  return e;
}

void set_max_threads(unsigned threads) { g_threads = threads; }

unsigned max_threads() {
  const unsigned t = g_threads.load();
  if (t != 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(max_threads(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace gdesign
