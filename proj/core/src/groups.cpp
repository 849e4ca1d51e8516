#include "gdesign/groups.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

using Index = Eigen::Index;

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ValidationError("cannot parse " + what + ": '" + std::string(s) + "'");
  return v;
}

PauliString alternating(int n, char even, char odd) {
  std::string s;
  for (int j = 0; j < n; ++j) s += (j % 2 == 0) ? even : odd;
  return PauliString::parse(s);
}

// Local 2-qubit Pauli from the letters of p at qubits a and b.
PauliString restrict_to_pair(const PauliString& p, int a, int b) {
  std::string s{p.letter(a), p.letter(b)};
  return PauliString::parse(s);
}

Eigen::Matrix4cd local_exponential(const PauliString& local, double theta) {
  return pauli_exponential(local, theta);
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::matchgate: return "matchgate";
    case GroupKind::orthogonal: return "orthogonal";
    case GroupKind::symplectic: return "symplectic";
    case GroupKind::unitary: return "unitary";
    case GroupKind::mixed_unitary: return "mixed-unitary";
    case GroupKind::clifford: return "clifford";
    case GroupKind::custom: return "custom";
  }
  return "unknown";
}

GroupKind parse_group_kind(std::string_view name) {
  const std::string s = lower(name);
  if (s == "matchgate") return GroupKind::matchgate;
  if (s == "orthogonal") return GroupKind::orthogonal;
  if (s == "symplectic") return GroupKind::symplectic;
  if (s == "unitary") return GroupKind::unitary;
  if (s == "mixed-unitary" || s == "mixed_unitary") return GroupKind::mixed_unitary;
  if (s == "clifford") return GroupKind::clifford;
  if (s == "custom") return GroupKind::custom;
  throw ValidationError("unknown group '" + std::string(name) + "'");
}

BilinearForm BilinearForm::from_pauli(const PauliString& omega) {
  BilinearForm f;
  f.n_ = omega.num_qubits();
  f.pauli_ = omega;
  f.symmetry_ = transpose_sign(omega) > 0 ? FormSymmetry::symmetric : FormSymmetry::antisymmetric;
  return f;
}

BilinearForm BilinearForm::from_dense(const Operator& omega) {
  const auto d = static_cast<std::uint64_t>(omega.rows());
  if (omega.rows() != omega.cols() || d == 0 || (d & (d - 1)) != 0)
    throw ValidationError("bilinear form must be square with power-of-two dimension");
  if (max_abs_diff(omega.adjoint() * omega, Operator::Identity(omega.rows(), omega.cols())) > 1e-10)
    throw ValidationError("bilinear form must be unitary");
  BilinearForm f;
  f.n_ = std::countr_zero(d);
  f.dense_ = omega;
  const Operator t = omega.transpose();
  if (max_abs_diff(t, omega) <= 1e-10) {
    f.symmetry_ = FormSymmetry::symmetric;
  } else if (max_abs_diff(t, -omega) <= 1e-10) {
    f.symmetry_ = FormSymmetry::antisymmetric;
  } else {
    throw ValidationError("bilinear form is neither symmetric nor antisymmetric");
  }
  return f;
}

Operator BilinearForm::dense(int cap) const {
  if (pauli_) return to_dense(*pauli_, cap);
  if (n_ > cap) throw BudgetError("dense form exceeds cap");
  return dense_;
}

std::string BilinearForm::str() const { return pauli_ ? pauli_->str() : "dense(" + std::to_string(n_) + ")"; }

BilinearForm matchgate_form_xy(int n) { return BilinearForm::from_pauli(alternating(n, 'X', 'Y')); }
BilinearForm matchgate_form_yx(int n) { return BilinearForm::from_pauli(alternating(n, 'Y', 'X')); }

BilinearForm symplectic_form(int n) {
  detail::require(n >= 1, "symplectic form needs at least one qubit");
  return BilinearForm::from_pauli(PauliString::single(n, 0, 'Y').with_phase(1));
}

bool form_anticondition(const BilinearForm& omega, const PauliString& p) {
  if (p.num_qubits() != omega.num_qubits())
    throw ValidationError("form on " + std::to_string(omega.num_qubits()) + " qubits vs Pauli on " +
                          std::to_string(p.num_qubits()));
  const PauliString h = p.phaseless();
  if (omega.is_pauli()) {
    const bool c = commutes(h, *omega.pauli());
    return transpose_sign(h) == (c ? -1 : 1);
  }
  const Operator w = omega.dense();
  const Operator pd = to_dense(h);
  return (pd.transpose() * w + w * pd).cwiseAbs().maxCoeff() <= 1e-10;
}

bool invariant_form_check(const BilinearForm& omega, const GeneratorSet& s) {
  if (s.num_qubits() != omega.num_qubits()) throw ValidationError("form and generator set sizes differ");
  return std::all_of(s.generators().begin(), s.generators().end(),
                     [&](const PauliString& p) { return form_anticondition(omega, p); });
}

StateVector invariant_state(const BilinearForm& omega) {
  const int n = omega.num_qubits();
  check_state_budget(n);
  const Operator w = omega.dense();
  StateVector psi = matrix_to_state(w.transpose());
  psi.normalize();
  return psi;
}

Adjacency::Adjacency(int n, std::vector<std::pair<int, int>> edges, std::string label)
    : n_(n), edges_(std::move(edges)), label_(std::move(label)) {
  detail::require(n >= 1 && n <= kMaxPauliQubits, "adjacency qubit count out of range");
  std::set<std::pair<int, int>> seen;
  for (auto& [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw ValidationError("invalid edge " + std::to_string(a) + "-" + std::to_string(b));
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      throw ValidationError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
  }
  colors_.assign(edges_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    std::set<int> used;
    for (std::size_t f = 0; f < e; ++f) {
      const bool share = edges_[f].first == edges_[e].first || edges_[f].first == edges_[e].second ||
                         edges_[f].second == edges_[e].first || edges_[f].second == edges_[e].second;
      if (share) used.insert(colors_[f]);
    }
    int c = 0;
    while (used.count(c)) ++c;
    colors_[e] = c;
    num_colors_ = std::max(num_colors_, c + 1);
  }
}

Adjacency Adjacency::chain(int n) {
  std::vector<std::pair<int, int>> e;
  for (int j = 0; j + 1 < n; ++j) e.emplace_back(j, j + 1);
  return {n, std::move(e), "chain"};
}

Adjacency Adjacency::grid(int rows, int cols) {
  detail::require(rows >= 1 && cols >= 1, "grid dimensions must be positive");
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c) e.emplace_back(r * cols + c, r * cols + c + 1);
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c) e.emplace_back(r * cols + c, (r + 1) * cols + c);
  return {rows * cols, std::move(e), "grid " + std::to_string(rows) + "x" + std::to_string(cols)};
}

Adjacency Adjacency::from_edges(int n, std::vector<std::pair<int, int>> edges) {
  std::string label;
  for (auto [a, b] : edges) label += (label.empty() ? "" : ",") + std::to_string(a) + "-" + std::to_string(b);
  return {n, std::move(edges), label};
}

Adjacency Adjacency::parse(std::string_view text, int n) {
  const std::string s = lower(text);
  if (s == "chain") return chain(n);
  if (s.starts_with("grid")) {
    std::string dims = s.substr(4);
    dims.erase(std::remove(dims.begin(), dims.end(), ' '), dims.end());
    const auto x = dims.find('x');
    if (x == std::string::npos) throw ValidationError("grid adjacency must look like 'grid RxC'");
    const int r = parse_int(std::string_view(dims).substr(0, x), "grid rows");
    const int c = parse_int(std::string_view(dims).substr(x + 1), "grid columns");
    if (r * c != n)
      throw ValidationError("grid " + std::to_string(r) + "x" + std::to_string(c) + " does not have " +
                            std::to_string(n) + " qubits");
    return grid(r, c);
  }
  std::vector<std::pair<int, int>> edges;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto dash = tok.find('-');
    if (dash == std::string::npos) throw ValidationError("edge must look like 'a-b': '" + tok + "'");
    edges.emplace_back(parse_int(std::string_view(tok).substr(0, dash), "edge endpoint"),
                       parse_int(std::string_view(tok).substr(dash + 1), "edge endpoint"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return from_edges(n, std::move(edges));
}

std::vector<PauliString> two_local_paulis(const Adjacency& adj) {
  const int n = adj.num_qubits();
  std::vector<PauliString> out;
  static constexpr char kLetters[] = {'X', 'Y', 'Z'};
  for (int q = 0; q < n; ++q)
    for (char c : kLetters) out.push_back(PauliString::single(n, q, c));
  for (auto [a, b] : adj.edges())
    for (char ca : kLetters)
      for (char cb : kLetters) out.push_back(PauliString::single(n, a, ca) * PauliString::single(n, b, cb));
  for (auto& p : out) p = p.phaseless();
  return out;
}

GeneratorSet form_compatible_generators(const BilinearForm& omega, const Adjacency& adj) {
  std::vector<PauliString> keep;
  for (const auto& p : two_local_paulis(adj))
    if (form_anticondition(omega, p)) keep.push_back(p);
  return {adj.num_qubits(), std::move(keep)};
}

GeneratorSet matchgate_standard_generators(int n) {
  std::vector<PauliString> g;
  for (int j = 0; j < n; ++j) g.push_back(PauliString::single(n, j, 'Z'));
  for (int j = 0; j + 1 < n; ++j) g.push_back(PauliString::single(n, j, 'X') * PauliString::single(n, j + 1, 'X'));
  return {n, std::move(g)};
}

GeneratorSet matchgate_full_generators(int n) {
  std::vector<PauliString> g;
  for (int a = 1; a <= 2 * n; ++a)
    for (int b = a + 1; b <= 2 * n; ++b) g.push_back((majorana(a, n) * majorana(b, n)).phaseless());
  return {n, std::move(g)};
}

std::uint64_t GroupSpec::dimension() const {
  const std::uint64_t d = std::uint64_t{1} << n;
  return kind == GroupKind::mixed_unitary ? d * d : d;
}

GroupSpec GroupSpec::matchgate(int n, bool full_generators) {
  GroupSpec g;
  g.kind = GroupKind::matchgate;
  g.n = n;
  g.generators = full_generators ? matchgate_full_generators(n) : matchgate_standard_generators(n);
  g.form = matchgate_form_xy(n);
  g.linear_symmetries = {PauliString::identity(n), PauliString::parse(std::string(static_cast<std::size_t>(n), 'Z'))};
  detail::require(invariant_form_check(*g.form, *g.generators), "matchgate generators violate the XY form");
  return g;
}

GroupSpec GroupSpec::orthogonal(int n) {
  GroupSpec g;
  g.kind = GroupKind::orthogonal;
  g.n = n;
  g.form = BilinearForm::from_pauli(PauliString::identity(n));
  g.generators = form_compatible_generators(*g.form, Adjacency::chain(n));
  g.linear_symmetries = {PauliString::identity(n)};
  return g;
}

GroupSpec GroupSpec::symplectic(int n) {
  GroupSpec g;
  g.kind = GroupKind::symplectic;
  g.n = n;
  g.form = symplectic_form(n);
  g.generators = form_compatible_generators(*g.form, Adjacency::chain(n));
  g.linear_symmetries = {PauliString::identity(n)};
  return g;
}

GroupSpec GroupSpec::unitary(int n) {
  GroupSpec g;
  g.kind = GroupKind::unitary;
  g.n = n;
  g.generators = GeneratorSet(n, two_local_paulis(Adjacency::chain(n)));
  g.linear_symmetries = {PauliString::identity(n)};
  return g;
}

GroupSpec GroupSpec::mixed_unitary(int n) {
  GroupSpec g;
  g.kind = GroupKind::mixed_unitary;
  g.n = n;
  return g;
}

GroupSpec GroupSpec::clifford(int n) {
  GroupSpec g;
  g.kind = GroupKind::clifford;
  g.n = n;
  return g;
}

GroupSpec GroupSpec::custom(int n, GeneratorSet generators, std::optional<BilinearForm> form,
                            std::vector<PauliString> linear_symmetries) {
  detail::require(generators.num_qubits() == n, "custom generators do not match qubit count");
  if (form && !invariant_form_check(*form, generators))
    throw ValidationError("custom generators do not preserve the given form");
  GroupSpec g;
  g.kind = GroupKind::custom;
  g.n = n;
  g.generators = std::move(generators);
  g.form = std::move(form);
  g.linear_symmetries = linear_symmetries.empty() ? std::vector<PauliString>{PauliString::identity(n)}
                                                  : std::move(linear_symmetries);
  return g;
}

GroupSpec GroupSpec::make(GroupKind kind, int n) {
  detail::require(n >= 1 && n <= kMaxGraphQubits, "qubit count out of range: " + std::to_string(n));
  switch (kind) {
    case GroupKind::matchgate: return matchgate(n);
    case GroupKind::orthogonal: return orthogonal(n);
    case GroupKind::symplectic: return symplectic(n);
    case GroupKind::unitary: return unitary(n);
    case GroupKind::mixed_unitary: return mixed_unitary(n);
    case GroupKind::clifford: return clifford(n);
    case GroupKind::custom: break;
  }
  throw ValidationError("custom groups need explicit generators");
}

Eigen::Matrix4cd sample_local_gate(const GroupSpec& g, int a, int b, Rng& rng) {
  switch (g.kind) {
    case GroupKind::matchgate: {
      if (b != a + 1) throw ValidationError("matchgate gates need nearest-neighbor pairs (a, a+1)");
      static const char* kTerms[] = {"ZI", "IZ", "XX", "XY", "YX", "YY"};
      Eigen::Matrix4cd gate = Eigen::Matrix4cd::Identity();
      for (const char* t : kTerms)
        gate = local_exponential(PauliString::parse(t), 2.0 * std::numbers::pi * rng.uniform()) * gate;
      return gate;
    }
    case GroupKind::orthogonal: return haar_orthogonal(4, rng).cast<cplx>();
    case GroupKind::symplectic: {
      const int zero = g.form && g.form->is_pauli() ? std::countr_zero(g.form->pauli()->x_bits()) : 0;
      if (a == zero && b != zero) {
        return haar_symplectic(4, rng);
      }
      if (b == zero && a != zero) {
        // Gate basis order is (a, b); the form sits on b.
        const Eigen::Matrix4cd s = haar_symplectic(4, rng);
        Eigen::Matrix4cd perm = Eigen::Matrix4cd::Zero();
        perm(0, 0) = perm(1, 2) = perm(2, 1) = perm(3, 3) = 1.0;
        return perm * s * perm;
      }
      return haar_orthogonal(4, rng).cast<cplx>();
    }
    case GroupKind::unitary:
    case GroupKind::mixed_unitary: return haar_unitary(4, rng);
    case GroupKind::clifford: {
      const auto& all = enumerate_clifford(2);
      return all[rng.uniform_int(all.size())];
    }
    case GroupKind::custom: {
      detail::require(g.generators.has_value(), "custom group has no generators");
      Eigen::Matrix4cd gate = Eigen::Matrix4cd::Identity();
      const QubitSet pair{a, b};
      for (const auto& h : g.generators->generators())
        if (pair.contains(support(h)))
          gate = local_exponential(restrict_to_pair(h, a, b), 2.0 * std::numbers::pi * rng.uniform()) * gate;
      return gate;
    }
  }
  throw ValidationError("unsupported group kind");
}

CircuitLayout brickwork_layout(const Adjacency& adj, int depth) {
  detail::require(depth >= 0, "depth must be nonnegative");
  CircuitLayout layout{adj.num_qubits(), {}};
  for (int t = 0; t < depth && adj.num_colors() > 0; ++t) {
    const int color = t % adj.num_colors();
    std::vector<std::pair<int, int>> layer;
    for (std::size_t e = 0; e < adj.edges().size(); ++e)
      if (adj.colors()[e] == color) layer.push_back(adj.edges()[e]);
    layout.layers.push_back(std::move(layer));
  }
  return layout;
}

ShallowSample sample_shallow(const GroupSpec& g, int depth, const Adjacency& adj, Rng& rng) {
  if (adj.num_qubits() != g.n)
    throw ValidationError("adjacency has " + std::to_string(adj.num_qubits()) + " qubits, group has " +
                          std::to_string(g.n));
  const Index d = Index{1} << g.n;
  ShallowSample s{Operator::Identity(d, d), brickwork_layout(adj, depth)};
  for (const auto& layer : s.layout.layers)
    for (auto [a, b] : layer) apply_two_qubit_left(s.u, sample_local_gate(g, a, b, rng), a, b, g.n);
  return s;
}

QubitSet lightcone(const QubitSet& support, int depth, const Adjacency& adj) {
  QubitSet cur = support;
  for (int t = 0; t < depth; ++t) {
    QubitSet next = cur;
    for (auto [a, b] : adj.edges()) {
      if (cur.contains(a)) next.insert(b);
      if (cur.contains(b)) next.insert(a);
    }
    if (next == cur) break;
    cur = next;
  }
  return cur;
}

QubitSet circuit_lightcone(const QubitSet& support, const CircuitLayout& layout) {
  QubitSet cur = support;
  for (const auto& layer : layout.layers) {
    QubitSet next = cur;
    for (auto [a, b] : layer)
      if (cur.contains(a) || cur.contains(b)) {
        next.insert(a);
        next.insert(b);
      }
    cur = next;
  }
  return cur;
}

Operator sample_gate_count(const std::vector<PauliString>& allowed, int gates, Rng& rng) {
  detail::require(!allowed.empty(), "gate-count ensemble needs generators");
  detail::require(gates >= 0, "gate count must be nonnegative");
  const int n = allowed.front().num_qubits();
  const Index d = Index{1} << n;
  Operator u = Operator::Identity(d, d);
  for (int k = 0; k < gates; ++k) {
    const PauliString& h = allowed[rng.uniform_int(allowed.size())];
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    u = std::cos(theta) * u + cplx(0.0, std::sin(theta)) * apply_left(h.phaseless(), u);
  }
  return u;
}

Operator mixed_unitary_element(const Operator& u) { return kron(u, u.conjugate()); }

Eigen::MatrixXcd majorana_adjoint_action(const Operator& u, int n) {
  const int m = 2 * n;
  const double d = static_cast<double>(u.rows());
  Eigen::MatrixXcd r(m, m);
  for (int j = 0; j < m; ++j) {
    const Operator conj = apply_right(u, majorana(j + 1, n)) * u.adjoint();
    for (int i = 0; i < m; ++i) r(i, j) = trace_product(majorana(i + 1, n), conj) / d;
  }
  return r;
}

MembershipReport verify_group_membership(const Operator& u, const GroupSpec& g, double tol) {
  MembershipReport rep;
  const auto d = static_cast<Index>(g.dimension());
  if (u.rows() != d || u.cols() != d) {
    rep.ok = false;
    rep.diagnostic = "dimension " + std::to_string(u.rows()) + " does not match group dimension " + std::to_string(d);
    return rep;
  }
  rep.unitarity_error = (u.adjoint() * u - Operator::Identity(d, d)).cwiseAbs().maxCoeff();
  if (rep.unitarity_error > tol) {
    rep.ok = false;
    rep.diagnostic = "not unitary";
    return rep;
  }
  if (g.form) {
    const Operator w = g.form->dense();
    rep.form_error = (u.transpose() * w * u - w).cwiseAbs().maxCoeff();
    if (rep.form_error > tol) {
      rep.ok = false;
      rep.diagnostic = "form " + g.form->str() + " not preserved";
      return rep;
    }
  }
  switch (g.kind) {
    case GroupKind::matchgate: {
      const Eigen::MatrixXcd r = majorana_adjoint_action(u, g.n);
      const double imag = r.imag().cwiseAbs().maxCoeff();
      const Eigen::MatrixXd re = r.real();
      const double orth = (re.transpose() * re - Eigen::MatrixXd::Identity(re.rows(), re.cols())).cwiseAbs().maxCoeff();
      if (imag > tol || orth > tol * 10 || re.determinant() < 0) {
        rep.ok = false;
        rep.diagnostic = "Majorana adjoint action is not in SO(2n)";
      }
      break;
    }
    case GroupKind::mixed_unitary: {
      // W[(a,b),(c,e)] = U[a,c] conj(U[b,e]) is rank one after regrouping.
      const Index k = Index{1} << g.n;
      Eigen::MatrixXcd re(k * k, k * k);
      for (Index a = 0; a < k; ++a)
        for (Index b = 0; b < k; ++b)
          for (Index c = 0; c < k; ++c)
            for (Index e = 0; e < k; ++e) re(a * k + c, b * k + e) = u(a * k + b, c * k + e);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(re, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const auto& sv = svd.singularValues();
      const double rest = sv.size() > 1 ? sv(1) : 0.0;
      const Eigen::VectorXcd left = svd.matrixU().col(0);
      const Eigen::VectorXcd right = svd.matrixV().col(0);
      const cplx overlap = left.dot(right);
      if (rest > tol * static_cast<double>(k) || std::abs(std::abs(overlap) - 1.0) > 1e-8) {
        rep.ok = false;
        rep.diagnostic = "not of the form U (x) U*";
      }
      break;
    }
    case GroupKind::clifford: {
      for (int q = 0; q < g.n && rep.ok; ++q)
        for (char c : {'X', 'Z'}) {
          const Operator img = u * to_dense(PauliString::single(g.n, q, c)) * u.adjoint();
          const auto coeffs = pauli_coefficients(img, 1e-9);
          if (coeffs.size() != 1 || std::abs(std::abs(coeffs.front().second) - 1.0) > 1e-8) {
            rep.ok = false;
            rep.diagnostic = "does not normalize the Pauli group";
            break;
          }
        }
      break;
    }
    default: break;
  }
  return rep;
}

}  // namespace gdesign
