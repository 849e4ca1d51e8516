#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gdesign {

/// A set of qubit indices (0-based, at most 64 qubits), stored as a bitmask.
class QubitSet {
 public:
  constexpr QubitSet() = default;
  constexpr explicit QubitSet(std::uint64_t mask) : mask_(mask) {}
  QubitSet(std::initializer_list<int> qubits);
  explicit QubitSet(const std::vector<int>& qubits);

  static QubitSet all(int n);
  static QubitSet range(int first, int last);  // [first, last)

  constexpr std::uint64_t mask() const { return mask_; }
  bool contains(int q) const { return q >= 0 && q < 64 && ((mask_ >> q) & 1u); }
  bool contains(const QubitSet& other) const { return (other.mask_ & ~mask_) == 0; }
  int size() const;
  bool empty() const { return mask_ == 0; }

  void insert(int q);
  QubitSet complement(int n) const;
  std::vector<int> to_vector() const;
  std::string str() const;  // "{0,2,3}"

  QubitSet operator|(const QubitSet& o) const { return QubitSet(mask_ | o.mask_); }
  QubitSet operator&(const QubitSet& o) const { return QubitSet(mask_ & o.mask_); }
  friend bool operator==(const QubitSet&, const QubitSet&) = default;

 private:
  std::uint64_t mask_ = 0;
};

}  // namespace gdesign
