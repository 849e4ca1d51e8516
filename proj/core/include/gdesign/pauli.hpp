#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gdesign/qubit_set.hpp"

namespace gdesign {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Default cap on qubits for dense 2^n x 2^n materialization.
inline constexpr int kDefaultDenseCap = 12;
inline constexpr int kMaxPauliQubits = 64;

/**
 * An n-qubit Pauli string i^phase * (s_0 (x) s_1 (x) ... (x) s_{n-1}) with
 * s_j in {I, X, Y, Z}.
 *
 * Qubit j is encoded by bit j of x_bits/z_bits: (x,z) = (1,0) X, (0,1) Z,
 * (1,1) Y. phase is relative to the letter form, so phase 0 is the Hermitian
 * representative. Qubit 0 is the leftmost character of the text form and the
 * most significant bit of a dense basis index.
 */
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n, std::uint64_t x_bits, std::uint64_t z_bits, int phase = 0);

  static PauliString identity(int n);
  /// Single-qubit letter ('I','X','Y','Z') placed on `qubit`.
  static PauliString single(int n, int qubit, char letter);
  /// Parses "[+|-|+i|-i]<IXYZ>*", e.g. "-iXYZ".
  static PauliString parse(std::string_view text);

  int num_qubits() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  int phase() const { return phase_; }

  char letter(int qubit) const;
  int y_count() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  /// Same letters, phase 0.
  PauliString phaseless() const { return {n_, x_, z_, 0}; }
  PauliString with_phase(int phase) const { return {n_, x_, z_, phase}; }
  bool equal_up_to_phase(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

PauliString multiply(const PauliString& p, const PauliString& q);
inline PauliString operator*(const PauliString& p, const PauliString& q) { return multiply(p, q); }

bool commutes(const PauliString& p, const PauliString& q);

/// (-1)^{#Y}: P^T = transpose_sign(P) * P for the Hermitian representative.
int transpose_sign(const PauliString& p);

QubitSet support(const PauliString& p);

/// The complex unit i^k for k mod 4.
cplx i_pow(int k);

/// Dense 2^n x 2^n matrix; throws BudgetError when n > cap.
Operator to_dense(const PauliString& p, int cap = kDefaultDenseCap);

/// Returns P * A without materializing P.
Operator apply_left(const PauliString& p, const Operator& a);
/// Returns A * P without materializing P.
Operator apply_right(const Operator& a, const PauliString& p);
/// Tr[P A] in O(d).
cplx trace_product(const PauliString& p, const Operator& a);

/// Jordan-Wigner Majorana c_i for 1 <= i <= 2n:
/// c_{2j-1} = Z..Z X I..I, c_{2j} = Z..Z Y I..I with j-1 leading Z's.
PauliString majorana(int index, int n);

/// P = i^phase * c_{indices[0]} c_{indices[1]} ... with ascending 1-based indices.
struct MajoranaMonomial {
  std::vector<int> indices;
  int phase = 0;
};

/// Product c_{a_1} c_{a_2} ... in the given order.
PauliString majorana_product(std::span<const int> indices, int n);

/// Unique ascending Majorana monomial proportional to P. Every Pauli string
/// has one; std::nullopt is only returned if the reconstruction check fails.
std::optional<MajoranaMonomial> majorana_decomposition(const PauliString& p);

}  // namespace gdesign
