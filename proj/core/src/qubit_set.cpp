#include "gdesign/qubit_set.hpp"

#include <bit>

#include "gdesign/errors.hpp"

namespace gdesign {

QubitSet::QubitSet(std::initializer_list<int> qubits) {
  for (int q : qubits) insert(q);
}

QubitSet::QubitSet(const std::vector<int>& qubits) {
  for (int q : qubits) insert(q);
}

QubitSet QubitSet::all(int n) {
  detail::require(n >= 0 && n <= 64, "qubit count out of range: " + std::to_string(n));
  return QubitSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

QubitSet QubitSet::range(int first, int last) {
  QubitSet s;
  for (int q = first; q < last; ++q) s.insert(q);
  return s;
}

int QubitSet::size() const { return std::popcount(mask_); }

void QubitSet::insert(int q) {
  detail::require(q >= 0 && q < 64, "qubit index out of range: " + std::to_string(q));
  mask_ |= std::uint64_t{1} << q;
}

QubitSet QubitSet::complement(int n) const { return QubitSet(all(n).mask_ & ~mask_); }

std::vector<int> QubitSet::to_vector() const {
  std::vector<int> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string QubitSet::str() const {
  std::string s = "{";
  bool first = true;
  for (int q : to_vector()) {
    if (!first) s += ",";
    s += std::to_string(q);
    first = false;
  }
  return s + "}";
}

}  // namespace gdesign
