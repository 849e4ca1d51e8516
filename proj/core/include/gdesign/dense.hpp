#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gdesign/pauli.hpp"
#include "gdesign/qubit_set.hpp"

namespace gdesign {

/// Largest n for two-copy state vectors (dimension d^2 = 4^n).
inline constexpr int kMaxTwoCopyStateQubits = 8;
/// Largest n for materialized d^2 x d^2 two-copy operators.
inline constexpr int kMaxTwoCopyOperatorQubits = 5;

/// Throws BudgetError when a two-copy state on n qubits per copy is too large.
void check_state_budget(int n);
void check_operator_budget(int n);

Operator kron(const Operator& a, const Operator& b);

/// Maximally entangled state over two m-qubit registers. Copy 1 occupies
/// the high index bits: amplitude index = i * 2^m + j.
StateVector bell_state(int m);

/// Two-copy state <-> d x d coefficient matrix M with psi = sum_ij M_ij |i>|j>.
/// (A (x) B) psi corresponds to A M B^T.
Operator state_to_matrix(const StateVector& psi);
StateVector matrix_to_state(const Operator& m);

/// Swap of the `region` factors between the two copies.
Operator swap_region(const QubitSet& region, int n);

/// I_L (x) I_L (x) |Phi_Lbar><Phi_Lbar| in the two-copy ordering.
Operator bell_projector_on_complement(const QubitSet& region, int n);

/// Nonzero coefficients a_T = Tr[T A]/d of A = sum_T a_T T.
std::vector<std::pair<PauliString, cplx>> pauli_coefficients(const Operator& a, double tol = 1e-13);

/// <psi|Pi|psi> clamped to [0,1].
double povm_probability(const StateVector& psi, const Operator& projector);

/// Splits dense indices into (region, complement) parts.
class RegionIndex {
 public:
  RegionIndex(const QubitSet& region, int n);
  std::uint64_t dim_region() const { return dl_; }
  std::uint64_t dim_complement() const { return dlb_; }
  /// Full index for region index l and complement index lb (qubit order preserved).
  std::uint64_t at(std::uint64_t l, std::uint64_t lb) const { return table_[l * dlb_ + lb]; }

 private:
  std::uint64_t dl_;
  std::uint64_t dlb_;
  std::vector<std::uint64_t> table_;
};

/// Tr_Lbar A as a d_L x d_L matrix.
Operator partial_trace_complement(const Operator& a, const QubitSet& region, int n);

/// Tr[(A (x) B) S_L] = Tr[(Tr_Lbar A)(Tr_Lbar B)], without forming d^2 x d^2 matrices.
cplx swap_region_trace(const Operator& a, const Operator& b, const QubitSet& region, int n);

/// Born probability of I_L (x) I_L (x) |Phi_Lbar><Phi_Lbar| for the two-copy
/// state with coefficient matrix M.
double complement_bell_probability(const Operator& m, const QubitSet& region, int n);

/// In place U <- G U, with G a 4x4 gate on (q0, q1); q0 is the high bit of the
/// gate's local basis.
void apply_two_qubit_left(Operator& u, const Eigen::Matrix4cd& gate, int q0, int q1, int n);
void apply_one_qubit_left(Operator& u, const Eigen::Matrix2cd& gate, int q, int n);

/// Full 2^n operator for a 4x4 gate acting on (q0, q1).
Operator embed_two_qubit(const Eigen::Matrix4cd& gate, int q0, int q1, int n);

/// exp(i theta P) = cos(theta) I + i sin(theta) P for a Hermitian Pauli P.
Operator pauli_exponential(const PauliString& p, double theta);

/// Largest |entry| of A - B.
double max_abs_diff(const Operator& a, const Operator& b);

}  // namespace gdesign
