#include <cmath>
#include <deque>
#include <map>
#include <mutex>

#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/groups.hpp"

namespace gdesign {
namespace {

using Key = std::vector<long long>;

// Phase-normalized, rounded entries.
Key canonical_key(const Operator& u) {
  cplx phase = 1.0;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const cplx v = u(k);
    if (std::abs(v) > 1e-6) {
      phase = std::conj(v) / std::abs(v);
      break;
    }
  }
  Key key;
  key.reserve(static_cast<std::size_t>(2 * u.size()));
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const cplx v = u(k) * phase;
    key.push_back(std::llround(v.real() * 1e6));
    key.push_back(std::llround(v.imag() * 1e6));
  }
  return key;
}

std::vector<Operator> generate(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  Eigen::Matrix2cd ph;
  ph << 1, 0, 0, cplx(0, 1);
  std::vector<Operator> gens;
  for (int q = 0; q < n; ++q) {
    Operator a = Operator::Identity(d, d);
    apply_one_qubit_left(a, h, q, n);
    gens.push_back(a);
    Operator b = Operator::Identity(d, d);
    apply_one_qubit_left(b, ph, q, n);
    gens.push_back(b);
  }
  for (int q = 0; q + 1 < n; ++q) {
    Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
    cz(3, 3) = -1.0;
    gens.push_back(embed_two_qubit(cz, q, q + 1, n));
  }
  std::vector<Operator> out{Operator::Identity(d, d)};
  std::map<Key, std::size_t> seen{{canonical_key(out.front()), 0}};
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto& g : gens) {
      Operator next = g * out[head];
      if (seen.emplace(canonical_key(next), out.size()).second) out.push_back(std::move(next));
    }
  return out;
}

}  // namespace

const std::vector<Operator>& enumerate_clifford(int n) {
  if (n < 1 || n > 2) throw ValidationError("Clifford enumeration supports n = 1 or 2, got " + std::to_string(n));
  static std::once_flag once[2];
  static std::vector<Operator> cache[2];
  std::call_once(once[n - 1], [n] { cache[n - 1] = generate(n); });
  return cache[n - 1];
}

}  // namespace gdesign
