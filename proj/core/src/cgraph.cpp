#include "gdesign/cgraph.hpp"

#include <algorithm>
#include <bit>
#include <deque>

#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

class Bitset {
 public:
  explicit Bitset(std::uint64_t bits) : words_((bits + 63) / 64, 0) {}
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

 private:
  std::vector<std::uint64_t> words_;
};

struct Expander {
  int n;
  VertexCode low;
  std::vector<VertexCode> gens;

  bool anticommutes(VertexCode a, VertexCode b) const {
    const VertexCode ax = a & low, az = a >> n, bx = b & low, bz = b >> n;
    return std::popcount((ax & bz) ^ (az & bx)) & 1;
  }
  template <class F>
  void for_each_neighbor(VertexCode v, F&& f) const {
    for (VertexCode g : gens)
      if (anticommutes(v, g)) f(v ^ g);
  }
};

Expander make_expander(const GeneratorSet& s) {
  const int n = s.num_qubits();
  return {n, static_cast<VertexCode>((std::uint64_t{1} << n) - 1), s.codes()};
}

void check_budget(int n, const GraphOptions& opts) {
  if (n > opts.max_qubits || n > kMaxGraphQubits)
    throw BudgetError("commutator graph on " + std::to_string(n) + " qubits exceeds budget of " +
                      std::to_string(std::min(opts.max_qubits, kMaxGraphQubits)));
}

void check_vertex(const PauliString& p, const GeneratorSet& s) {
  if (p.num_qubits() != s.num_qubits())
    throw ValidationError("Pauli on " + std::to_string(p.num_qubits()) +
                          " qubits does not match generator set on " + std::to_string(s.num_qubits()));
}

// Level-synchronous BFS from `start`; visit(code, dist) is called in BFS order.
template <class Visit>
void bfs(VertexCode start, const Expander& ex, Bitset& seen, int max_radius, Visit&& visit) {
  std::vector<VertexCode> frontier{start}, next;
  seen.set(start);
  for (int dist = 0; !frontier.empty(); ++dist) {
    for (VertexCode v : frontier) visit(v, dist);
    if (dist == max_radius) break;
    next.clear();
    for (VertexCode v : frontier)
      ex.for_each_neighbor(v, [&](VertexCode w) {
        if (!seen.test(w)) {
          seen.set(w);
          next.push_back(w);
        }
      });
    std::swap(frontier, next);
  }
}

}  // namespace

VertexCode encode_vertex(const PauliString& p) {
  if (p.num_qubits() > kMaxGraphQubits)
    throw BudgetError("graph vertices limited to " + std::to_string(kMaxGraphQubits) + " qubits");
  return static_cast<VertexCode>(p.x_bits() | (p.z_bits() << p.num_qubits()));
}

PauliString decode_vertex(VertexCode code, int n) {
  const VertexCode low = static_cast<VertexCode>((std::uint64_t{1} << n) - 1);
  return {n, code & low, code >> n};
}

GeneratorSet::GeneratorSet(int n, std::vector<PauliString> generators) : n_(n) {
  detail::require(n >= 1 && n <= kMaxGraphQubits, "generator set qubit count out of range");
  for (auto& g : generators) {
    detail::require(g.num_qubits() == n, "generator " + g.str() + " has wrong qubit count");
    detail::require(!g.is_identity(), "identity is not a valid generator");
    const VertexCode c = encode_vertex(g);
    if (std::find(codes_.begin(), codes_.end(), c) != codes_.end())
      throw ValidationError("duplicate generator " + g.phaseless().str());
    codes_.push_back(c);
    gens_.push_back(g.phaseless());
  }
}

std::vector<PauliString> neighbors(const PauliString& p, const GeneratorSet& s) {
  check_vertex(p, s);
  std::vector<PauliString> out;
  for (const auto& h : s.generators())
    if (!commutes(h, p)) out.push_back(multiply(h, p).phaseless());
  return out;
}

bool ComponentSummary::contains_code(VertexCode c) const {
  return std::binary_search(sorted_.begin(), sorted_.end(), c);
}

bool ComponentSummary::contains(const PauliString& p) const {
  return p.num_qubits() == n_ && contains_code(encode_vertex(p));
}

std::optional<int> ComponentSummary::distance(const PauliString& p) const {
  if (dist_.empty() || p.num_qubits() != n_) return std::nullopt;
  const VertexCode c = encode_vertex(p);
  const auto it = std::find(order_.begin(), order_.end(), c);
  if (it == order_.end()) return std::nullopt;
  return dist_[static_cast<std::size_t>(it - order_.begin())];
}

int ComponentSummary::eccentricity() const {
  detail::require(!dist_.empty(), "component was built without distances");
  return dist_.back();
}

ComponentSummary component(const PauliString& p, const GeneratorSet& s, const GraphOptions& opts) {
  check_vertex(p, s);
  const int n = s.num_qubits();
  check_budget(n, opts);
  const Expander ex = make_expander(s);
  Bitset seen(std::uint64_t{1} << (2 * n));
  ComponentSummary c;
  c.n_ = n;
  c.rep_ = p.phaseless();
  bfs(encode_vertex(p), ex, seen, -1, [&](VertexCode v, int d) {
    c.order_.push_back(v);
    if (opts.keep_distances) c.dist_.push_back(d);
  });
  c.sorted_ = c.order_;
  std::sort(c.sorted_.begin(), c.sorted_.end());
  if (!opts.keep_distances) c.order_.clear();
  return c;
}

std::vector<PauliString> n_ball(const PauliString& p, const GeneratorSet& s, int radius,
                                const GraphOptions& opts) {
  check_vertex(p, s);
  detail::require(radius >= 0, "ball radius must be nonnegative");
  const int n = s.num_qubits();
  check_budget(n, opts);
  Bitset seen(std::uint64_t{1} << (2 * n));
  std::vector<PauliString> out;
  bfs(encode_vertex(p), make_expander(s), seen, radius,
      [&](VertexCode v, int) { out.push_back(decode_vertex(v, n)); });
  return out;
}

std::vector<std::uint64_t> ball_profile(const PauliString& p, const GeneratorSet& s,
                                        const GraphOptions& opts) {
  check_vertex(p, s);
  const int n = s.num_qubits();
  check_budget(n, opts);
  Bitset seen(std::uint64_t{1} << (2 * n));
  std::vector<std::uint64_t> profile;
  bfs(encode_vertex(p), make_expander(s), seen, -1, [&](VertexCode, int d) {
    if (static_cast<std::size_t>(d) >= profile.size())
      profile.push_back(profile.empty() ? 0 : profile.back());
    ++profile.back();
  });
  return profile;
}

ExactRatio r_fraction(const PauliString& p, const GeneratorSet& s, const QubitSet& region,
                      const GraphOptions& opts) {
  check_vertex(p, s);
  if (!region.contains(support(p)))
    throw ValidationError("support " + support(p).str() + " not inside region " + region.str());
  const int n = s.num_qubits();
  check_budget(n, opts);
  const VertexCode low = static_cast<VertexCode>((std::uint64_t{1} << n) - 1);
  const auto outside = static_cast<VertexCode>(~region.mask() & low);
  Bitset seen(std::uint64_t{1} << (2 * n));
  ExactRatio r{0, 0};
  bfs(encode_vertex(p), make_expander(s), seen, -1, [&](VertexCode v, int) {
    ++r.denominator;
    if ((((v & low) | (v >> n)) & outside) == 0) ++r.numerator;
  });
  return r;
}

DiameterResult diameter(const ComponentSummary& c, const GeneratorSet& s, DiameterMode mode,
                        std::uint64_t exact_limit) {
  detail::require(c.num_qubits() == s.num_qubits(), "component and generator set sizes differ");
  const auto& verts = c.members();
  const std::size_t m = verts.size();
  if (m <= 1) return {0, true};
  const bool exact = mode == DiameterMode::exact || (mode == DiameterMode::automatic && m <= exact_limit);
  const Expander ex = make_expander(s);

  std::vector<std::uint32_t> offsets(m + 1, 0);
  std::vector<std::uint32_t> adj;
  for (std::size_t i = 0; i < m; ++i) {
    ex.for_each_neighbor(verts[i], [&](VertexCode w) {
      const auto it = std::lower_bound(verts.begin(), verts.end(), w);
      adj.push_back(static_cast<std::uint32_t>(it - verts.begin()));
    });
    offsets[i + 1] = static_cast<std::uint32_t>(adj.size());
  }
  std::vector<int> dist(m);
  std::vector<std::uint32_t> queue(m);
  // Returns (eccentricity, farthest vertex with the smallest code).
  auto sweep = [&](std::uint32_t src) {
    std::fill(dist.begin(), dist.end(), -1);
    std::size_t head = 0, tail = 0;
    queue[tail++] = src;
    dist[src] = 0;
    std::uint32_t far = src;
    while (head < tail) {
      const std::uint32_t v = queue[head++];
      if (dist[v] > dist[far] || (dist[v] == dist[far] && v < far)) far = v;
      for (std::uint32_t k = offsets[v]; k < offsets[v + 1]; ++k) {
        const std::uint32_t w = adj[k];
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
      }
    }
    return std::pair<int, std::uint32_t>{dist[far], far};
  };

  if (exact) {
    int best = 0;
    for (std::uint32_t v = 0; v < m; ++v) best = std::max(best, sweep(v).first);
    return {best, true};
  }
  const auto start = static_cast<std::uint32_t>(
      std::lower_bound(verts.begin(), verts.end(), encode_vertex(c.representative())) - verts.begin());
  auto [e1, far1] = sweep(start);
  auto [e2, far2] = sweep(far1);
  auto [e3, far3] = sweep(far2);
  (void)far3;
  return {std::max({e1, e2, e3}), false};
}

std::vector<CensusEntry> census(const GeneratorSet& s, const GraphOptions& opts) {
  const int n = s.num_qubits();
  check_budget(n, opts);
  const Expander ex = make_expander(s);
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  Bitset seen(total);
  std::vector<CensusEntry> out;
  for (std::uint64_t v = 0; v < total; ++v) {
    if (seen.test(v)) continue;
    CensusEntry e;
    e.id = out.size();
    e.representative = decode_vertex(static_cast<VertexCode>(v), n);
    bfs(static_cast<VertexCode>(v), ex, seen, -1, [&](VertexCode, int) { ++e.size; });
    out.push_back(e);
  }
  return out;
}

int majorana_count(const PauliString& p) {
  const auto m = majorana_decomposition(p);
  detail::require(m.has_value(), "Majorana decomposition failed for " + p.str());
  return static_cast<int>(m->indices.size());
}

}  // namespace gdesign
