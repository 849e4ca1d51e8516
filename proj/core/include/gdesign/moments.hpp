#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gdesign/cgraph.hpp"
#include "gdesign/groups.hpp"
#include "gdesign/stats.hpp"

namespace gdesign {

/// Full group element: U, or U (x) U* for mixed-unitary groups.
Operator sample_element(const GroupSpec& g, Rng& rng);

/// Mean and standard error of f(rng) over `samples` per-sample streams.
MomentEstimate monte_carlo(std::size_t samples, std::uint64_t seed, const std::function<double(Rng&)>& f);

/// The swap S_L on the region factors, evaluated without forming d^2 x d^2 matrices.
struct SwapRegionTag {
  QubitSet region;
};
using SecondMomentObservable = std::variant<SwapRegionTag, Operator>;

/// E_U Tr[(U V U^dag)^{(x)2} O].
MomentEstimate mc_second_moment_trace(const GroupSpec& g, const Operator& v, const SecondMomentObservable& o,
                                      std::size_t samples, std::uint64_t seed);


struct WeingartenCoefficients {
  std::string alpha_exact, beta_exact, gamma_exact;
  double alpha = 0, beta = 0, gamma = 0;
};

/// alpha = -2/((d+-2)(d-+1)), beta = d/(..), gamma = +-d/(..); upper signs orthogonal.
WeingartenCoefficients weingarten_coefficients(FormKind kind, std::int64_t d);

/// alpha 1 + beta S + gamma d (1 (x) Omega)|Phi><Phi|(1 (x) Omega) on two copies.
Operator weingarten_reconstruction(FormKind kind, const BilinearForm& omega);

struct WeingartenCheck {
  WeingartenCoefficients coefficients;
  std::size_t samples = 0;
  std::size_t entries = 0;
  std::size_t outliers = 0;
  double max_z = 0.0;
  double max_abs_dev = 0.0;
  bool pass = false;
};

/// Entrywise comparison of the Monte Carlo E (U V U^dag)^{(x)2} against the
/// reconstruction, with V = Z on qubit 1 (commutes with the i Y_0 form).
WeingartenCheck weingarten_check(FormKind kind, int n, std::size_t samples, std::uint64_t seed, double k_sigma = 5.0);

struct QuadraticLabel {
  std::size_t j = 0;
  std::size_t component = 0;
  std::uint64_t component_size = 0;
  PauliString representative;
  /// Component holding L_j S for S in this component.
  std::size_t partner_component = 0;
  bool degenerate = false;
};

struct QuadraticBasis {
  int n = 0;
  std::vector<PauliString> linear_symmetries;
  std::vector<CensusEntry> components;
  std::vector<QuadraticLabel> labels;
  double max_gram_error = 0.0;
  std::size_t degenerate_count() const;
};

/// Labels of Q_{j,k} = 1/(d sqrt|C_k|) sum_{S in C_k} S (x) (L_j S), with the
/// Gram matrix verified in Pauli arithmetic.
QuadraticBasis quadratic_symmetry_basis(const GeneratorSet& s, const std::vector<PauliString>& linear_syms);

/// Dense Q_{j,k} (two-copy budget applies).
Operator quadratic_basis_element(const QuadraticBasis& basis, const GeneratorSet& s, std::size_t label);

/// <Q_label, (W (x) W)> for every label.
std::vector<cplx> quadratic_overlaps(const QuadraticBasis& basis, const GeneratorSet& s, const Operator& w);

struct SpreadUniformity {
  std::vector<PauliString> vertices;
  std::vector<MomentEstimate> masses;
  double predicted = 0.0;
  double max_off_component_mass = 0.0;
  double max_total_mass_error = 0.0;
  std::size_t outliers = 0;
};

/// E |Tr[T U P U^dag]/d|^2 for every T in component(P).
SpreadUniformity haar_spread_uniformity(const GroupSpec& g, const PauliString& p, std::size_t samples,
                                        std::uint64_t seed, double k_sigma = 5.0);

/// E Tr[Pi U^2] (Pi = identity if absent). Clifford samples carry a uniform eighth-root phase.
MomentEstimate frobenius_schur(const GroupSpec& g, const std::optional<Operator>& projector, std::size_t samples,
                               std::uint64_t seed);

/// Exact E Tr[U^2] over the Clifford group generated by H, S (and CZ), phases included.
double frobenius_schur_clifford_exact(int n);

/// (1 + Z...Z)/2.
Operator even_parity_projector(int n);

struct HaarUnitarySource {
  std::int64_t d;
  std::size_t samples;
  std::uint64_t seed;
};
struct CliffordEnumeration {
  int n;
};
struct PauliEnumeration {
  int n;
};
using CommutantSource = std::variant<HaarUnitarySource, CliffordEnumeration, PauliEnumeration>;

/// Mean |Tr U|^4 over the source; exact for enumerations (stderr 0).
MomentEstimate mixed_unitary_commutant_dimension(const CommutantSource& source);

/// E |Tr U^2|^2 over Haar unitaries.
MomentEstimate mixed_unitary_fs(std::int64_t d, std::size_t samples, std::uint64_t seed);

}  // namespace gdesign
