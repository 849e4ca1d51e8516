#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdesign/cgraph.hpp"
#include "gdesign/pauli.hpp"
#include "gdesign/qubit_set.hpp"
#include "gdesign/random.hpp"

namespace gdesign {

enum class GroupKind { matchgate, orthogonal, symplectic, unitary, mixed_unitary, clifford, custom };

/// The two form-preserving groups with a Weingarten closed form.
enum class FormKind { orthogonal, symplectic };

std::string to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view name);

enum class FormSymmetry { symmetric, antisymmetric };

/// A nondegenerate bilinear form Omega, preserved as U^T Omega U = Omega.
class BilinearForm {
 public:
  static BilinearForm from_pauli(const PauliString& omega);
  static BilinearForm from_dense(const Operator& omega);

  int num_qubits() const { return n_; }
  bool is_pauli() const { return pauli_.has_value(); }
  const std::optional<PauliString>& pauli() const { return pauli_; }
  FormSymmetry symmetry() const { return symmetry_; }
  Operator dense(int cap = kDefaultDenseCap) const;
  std::string str() const;

 private:
  int n_ = 0;
  std::optional<PauliString> pauli_;
  Operator dense_;
  FormSymmetry symmetry_ = FormSymmetry::symmetric;
};

/// XYXY... and YXYX... forms preserved by matchgates.
BilinearForm matchgate_form_xy(int n);
BilinearForm matchgate_form_yx(int n);
/// i Y on qubit 0, identity elsewhere.
BilinearForm symplectic_form(int n);

/// Checks P^T Omega + Omega P = 0 for every generator.
bool invariant_form_check(const BilinearForm& omega, const GeneratorSet& s);
bool form_anticondition(const BilinearForm& omega, const PauliString& p);

/// (1 (x) Omega)|Phi>, normalized.
StateVector invariant_state(const BilinearForm& omega);

/// Undirected interaction graph on n qubits.
class Adjacency {
 public:
  static Adjacency chain(int n);
  static Adjacency grid(int rows, int cols);
  static Adjacency from_edges(int n, std::vector<std::pair<int, int>> edges);
  /// "chain", "grid RxC" or "a-b,c-d,...".
  static Adjacency parse(std::string_view text, int n);

  int num_qubits() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// Greedy edge coloring in edge order; colors()[e] for edge e.
  const std::vector<int>& colors() const { return colors_; }
  int num_colors() const { return num_colors_; }
  std::string str() const { return label_; }

 private:
  Adjacency(int n, std::vector<std::pair<int, int>> edges, std::string label);
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> colors_;
  int num_colors_ = 0;
  std::string label_;
};

/// Paulis supported on one qubit or on one adjacency edge.
std::vector<PauliString> two_local_paulis(const Adjacency& adj);
/// Two-local Paulis P with P^T Omega + Omega P = 0.
GeneratorSet form_compatible_generators(const BilinearForm& omega, const Adjacency& adj);

GeneratorSet matchgate_standard_generators(int n);
/// All c_a c_b, a < b.
GeneratorSet matchgate_full_generators(int n);

struct GroupSpec {
  GroupKind kind = GroupKind::unitary;
  int n = 0;
  std::optional<GeneratorSet> generators;
  std::optional<BilinearForm> form;
  /// Paulis commuting with the group, used for the quadratic symmetry basis.
  std::vector<PauliString> linear_symmetries;

  /// Dimension of the represented operators: 2^n, or 4^n for mixed-unitary.
  std::uint64_t dimension() const;
  std::string name() const { return to_string(kind); }

  static GroupSpec matchgate(int n, bool full_generators = false);
  static GroupSpec orthogonal(int n);
  static GroupSpec symplectic(int n);
  static GroupSpec unitary(int n);
  static GroupSpec mixed_unitary(int n);
  static GroupSpec clifford(int n);
  /// Validates every generator against the form, if one is given.
  static GroupSpec custom(int n, GeneratorSet generators, std::optional<BilinearForm> form,
                          std::vector<PauliString> linear_symmetries);
  static GroupSpec make(GroupKind kind, int n);
};

/// Haar sample. Mixed-unitary returns U; the group element is U (x) U*.
Operator sample_haar(const GroupSpec& g, Rng& rng);

Operator haar_unitary(std::int64_t d, Rng& rng);
Eigen::MatrixXd haar_orthogonal(std::int64_t d, Rng& rng);
Eigen::MatrixXd haar_special_orthogonal(std::int64_t d, Rng& rng);
/// Unitary U with U^T J U = J for J = [[0, I], [-I, 0]] (equal to i Y (x) I).
Operator haar_symplectic(std::int64_t d, Rng& rng);

struct MatchgateSample {
  Operator u;
  /// U c_j U^dag = sum_i rotation(i, j) c_i.
  Eigen::MatrixXd rotation;
};
MatchgateSample haar_matchgate(int n, Rng& rng);
/// Spinor lift of R in SO(2n) as a product of Givens rotations.
Operator matchgate_from_rotation(const Eigen::MatrixXd& rotation, int n);
/// R(i, j) = Tr[c_i U c_j U^dag] / d; real orthogonal for matchgates.
Eigen::MatrixXcd majorana_adjoint_action(const Operator& u, int n);

Operator mixed_unitary_element(const Operator& u);

struct CircuitLayout {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> layers;
};

struct ShallowSample {
  Operator u;
  CircuitLayout layout;
};

/// Gate positions of the brickwork below; independent of the random gates.
CircuitLayout brickwork_layout(const Adjacency& adj, int depth);

/// Brickwork of `depth` layers; layer t applies a random group gate to every
/// edge of color t mod num_colors.
ShallowSample sample_shallow(const GroupSpec& g, int depth, const Adjacency& adj, Rng& rng);

/// Random 4x4 gate of kind g on the pair (a, b).
Eigen::Matrix4cd sample_local_gate(const GroupSpec& g, int a, int b, Rng& rng);

/// One neighborhood expansion per layer.
QubitSet lightcone(const QubitSet& support, int depth, const Adjacency& adj);
/// Support of U V U^dag allowed by the actual gate schedule.
QubitSet circuit_lightcone(const QubitSet& support, const CircuitLayout& layout);

/// Product of `gates` exponentials exp(i theta H), H uniform from `allowed`, theta uniform in [0, 2 pi).
Operator sample_gate_count(const std::vector<PauliString>& allowed, int gates, Rng& rng);

struct MembershipReport {
  bool ok = true;
  double unitarity_error = 0.0;
  double form_error = 0.0;
  std::string diagnostic;
  explicit operator bool() const { return ok; }
};

/// Unitarity plus the kind-specific condition. Mixed-unitary expects the
/// 2n-qubit element U (x) U*.
MembershipReport verify_group_membership(const Operator& u, const GroupSpec& g, double tol = 1e-10);

/// Projective Clifford representatives generated by H_i, S_i and CZ (n <= 2).
const std::vector<Operator>& enumerate_clifford(int n);

}  // namespace gdesign
