#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdesign/bounds.hpp"
#include "gdesign/groups.hpp"
#include "gdesign/stats.hpp"

namespace gdesign {

enum class ExperimentKind { depth, mixed_unitary, gate_count };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

/// Unset optionals are filled by resolve_config.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::depth;
  GroupKind group = GroupKind::matchgate;
  int n = 4;
  std::optional<PauliString> perturbation;
  std::optional<QubitSet> region;
  /// Brickwork layers (depth and mixed-unitary experiments).
  std::optional<int> depth;
  /// N, the number of generator exponentials (gate-count experiment).
  std::optional<int> gates;
  /// Matchgate generator set: all c_a c_b instead of the standard XX/Z set.
  bool full_generators = false;
  std::string adjacency = "chain";
  std::size_t samples = 20000;
  std::uint64_t seed = 7;
  /// One Born-rule outcome per sample instead of the exact probability.
  bool shot_mode = false;
};

/// Defaults:
///   depth, matchgate:      V = X on qubit n/2-1, depth n/2-1, region = its lightcone
///   depth, orthogonal:     V = Z_0, region = first n-1 qubits, depth n-2
///   depth, symplectic:     V = Z_1 (the form is i Y_0), region = first n-1 qubits, depth n-2
///   mixed-unitary:         V = Z_0, region = first n-1 qubits, deepest brickwork that fits
///   gate-count:            P = c_1 ... c_n, N = 1 (default_config also picks the full matchgate set)
/// With a region but no depth, the deepest brickwork whose schedule keeps V inside is used.
ExperimentConfig resolve_config(const ExperimentConfig& config);
ExperimentConfig default_config(ExperimentKind experiment, GroupKind group, int n);

struct ExperimentResult {
  ExperimentConfig config;
  std::string form;
  MomentEstimate p_shallow;
  MomentEstimate p_haar;
  double mc_bound = 0.0;
  double mc_bound_std_error = 0.0;
  std::optional<Rational> analytic_p_haar;
  std::optional<Rational> analytic_bound;
  std::string analytic_ref;
  /// Exact per-sample probabilities, also in shot mode.
  double min_shallow_probability = 1.0;
  /// Samples whose gate schedule carries V outside the region.
  std::size_t lightcone_violations = 0;
  /// In-lightcone samples with probability below 1 - 1e-9.
  std::size_t exactness_failures = 0;
  std::uint64_t ball_size = 0;
  std::uint64_t component_size = 0;
};

ExperimentResult run_depth_discrimination(const ExperimentConfig& config);
ExperimentResult run_mixed_unitary_discrimination(const ExperimentConfig& config);
ExperimentResult run_gatecount_discrimination(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Born probability of the depth-experiment POVM for one group element U.
double depth_povm_probability(const Operator& u, const PauliString& v, const BilinearForm& omega,
                              const QubitSet& region);
/// Same for the k = 1 mixed-unitary experiment, where the element is U (x) U*.
double mixed_unitary_povm_probability(const Operator& u, const PauliString& v, const QubitSet& region);

/// Sum over T in `vertices` of |Tr[T U P U^dag] / d|^2.
double pauli_spread_mass(const Operator& u, const PauliString& p, const std::vector<PauliString>& vertices);

}  // namespace gdesign
