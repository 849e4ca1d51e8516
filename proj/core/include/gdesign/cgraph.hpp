#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdesign/pauli.hpp"
#include "gdesign/qubit_set.hpp"

namespace gdesign {

/// Graph vertices are phaseless Paulis encoded as x | (z << n).
using VertexCode = std::uint32_t;
inline constexpr int kMaxGraphQubits = 16;
inline constexpr int kDefaultGraphBudget = 14;

VertexCode encode_vertex(const PauliString& p);
PauliString decode_vertex(VertexCode code, int n);

class GeneratorSet {
 public:
  GeneratorSet() = default;
  /// Phases are dropped; duplicates up to phase are rejected.
  GeneratorSet(int n, std::vector<PauliString> generators);

  int num_qubits() const { return n_; }
  const std::vector<PauliString>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<VertexCode>& codes() const { return codes_; }

 private:
  int n_ = 0;
  std::vector<PauliString> gens_;
  std::vector<VertexCode> codes_;
};

/// {HP up to phase : H in S, {H,P} = 0}.
std::vector<PauliString> neighbors(const PauliString& p, const GeneratorSet& s);

struct GraphOptions {
  int max_qubits = kDefaultGraphBudget;
  bool keep_distances = true;
};

/// A BFS-closed component. Members are stored sorted by code; BFS order and
/// distances from the representative are kept when requested.
class ComponentSummary {
 public:
  int num_qubits() const { return n_; }
  std::uint64_t size() const { return sorted_.size(); }
  const PauliString& representative() const { return rep_; }
  bool contains(const PauliString& p) const;
  bool contains_code(VertexCode c) const;
  /// BFS distance from the representative, if distances were kept and p is a member.
  std::optional<int> distance(const PauliString& p) const;
  bool has_distances() const { return !dist_.empty(); }
  /// Max BFS distance from the representative (requires distances).
  int eccentricity() const;
  const std::vector<VertexCode>& members() const { return sorted_; }
  const std::vector<VertexCode>& bfs_order() const { return order_; }
  const std::vector<int>& bfs_distances() const { return dist_; }

 private:
  friend ComponentSummary component(const PauliString&, const GeneratorSet&, const GraphOptions&);
  int n_ = 0;
  PauliString rep_;
  std::vector<VertexCode> sorted_;
  std::vector<VertexCode> order_;
  std::vector<int> dist_;
};

ComponentSummary component(const PauliString& p, const GeneratorSet& s, const GraphOptions& opts = {});

/// Vertices within BFS distance <= radius of p.
std::vector<PauliString> n_ball(const PauliString& p, const GeneratorSet& s, int radius,
                                const GraphOptions& opts = {});

/// ball_profile[N] = |n_ball(p, s, N)| for N = 0 .. eccentricity(p).
std::vector<std::uint64_t> ball_profile(const PauliString& p, const GeneratorSet& s,
                                        const GraphOptions& opts = {});

struct ExactRatio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// Fraction of component(p) supported inside `region`.
ExactRatio r_fraction(const PauliString& p, const GeneratorSet& s, const QubitSet& region,
                      const GraphOptions& opts = {});

enum class DiameterMode { automatic, exact, lower_bound };

struct DiameterResult {
  int value = 0;
  bool exact = true;
  std::string mode() const { return exact ? "exact" : "lower_bound"; }
};

/// Exact all-sources BFS up to `exact_limit` vertices in automatic mode,
/// otherwise a double-sweep lower bound.
DiameterResult diameter(const ComponentSummary& c, const GeneratorSet& s,
                        DiameterMode mode = DiameterMode::automatic,
                        std::uint64_t exact_limit = 20000);

struct CensusEntry {
  std::size_t id = 0;
  std::uint64_t size = 0;
  PauliString representative;
};

/// All components of the graph on 4^n vertices, ordered by smallest member.
std::vector<CensusEntry> census(const GeneratorSet& s, const GraphOptions& opts = {});

/// Number of Majoranas in the monomial proportional to p.
int majorana_count(const PauliString& p);

}  // namespace gdesign
