#include "gdesign/moments.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>

#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

using Index = Eigen::Index;
using Rational = boost::multiprecision::cpp_rational;

constexpr std::size_t kBlock = 64;

int qubits_of(const Operator& a) { return std::countr_zero(static_cast<std::uint64_t>(a.rows())); }

void require_samples(std::size_t samples) { detail::require(samples >= 1, "sample count must be positive"); }

// Per-entry first and second moments of real and imaginary parts, reduced in
// fixed blocks so the result does not depend on the worker count.
struct EntryMoments {
  Eigen::ArrayXXd re, im, re2, im2;
  void init(Index r, Index c) {
    re = im = re2 = im2 = Eigen::ArrayXXd::Zero(r, c);
  }
  void add(const Operator& x) {
    re += x.real().array();
    im += x.imag().array();
    re2 += x.real().array().square();
    im2 += x.imag().array().square();
  }
  void merge(const EntryMoments& o) {
    re += o.re;
    im += o.im;
    re2 += o.re2;
    im2 += o.im2;
  }
};

EntryMoments pairwise_merge(std::vector<EntryMoments>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  EntryMoments a = pairwise_merge(parts, lo, mid);
  a.merge(pairwise_merge(parts, mid, hi));
  return a;
}

std::string str(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1 ? boost::multiprecision::numerator(r).str() : r.str();
}

double to_double(const Rational& r) { return static_cast<double>(r); }

// Coefficients a[code] = Tr[T W]/d for every phaseless Pauli T.
std::vector<cplx> all_coefficients(const Operator& w, int n) {
  const std::uint64_t total = std::uint64_t{1} << (2 * n);
  const double d = static_cast<double>(w.rows());
  std::vector<cplx> a(total);
  for (std::uint64_t code = 0; code < total; ++code)
    a[code] = trace_product(decode_vertex(static_cast<VertexCode>(code), n), w) / d;
  return a;
}

std::vector<std::size_t> component_table(const GeneratorSet& s, const std::vector<CensusEntry>& comps) {
  const int n = s.num_qubits();
  std::vector<std::size_t> id(std::size_t{1} << (2 * n), 0);
  for (const auto& e : comps) {
    const auto c = component(e.representative, s, {kDefaultGraphBudget, false});
    for (VertexCode v : c.members()) id[v] = e.id;
  }
  return id;
}

Operator sample_power_trace_input(const GroupSpec& g, Rng& rng) {
  Operator u = sample_element(g, rng);
  if (g.kind == GroupKind::clifford) {
    const double k = static_cast<double>(rng.uniform_int(8));
    u *= std::polar(1.0, k * std::numbers::pi / 4);
  }
  return u;
}

}  // namespace

std::size_t QuadraticBasis::degenerate_count() const {
  std::size_t c = 0;
  for (const auto& l : labels) c += l.degenerate;
  return c;
}

Operator sample_element(const GroupSpec& g, Rng& rng) {
  const Operator u = sample_haar(g, rng);
  return g.kind == GroupKind::mixed_unitary ? mixed_unitary_element(u) : u;
}

MomentEstimate monte_carlo(std::size_t samples, std::uint64_t seed, const std::function<double(Rng&)>& f) {
  require_samples(samples);
  std::vector<double> values(samples);
  parallel_for(samples, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    values[i] = f(rng);
  });
  return estimate(values, seed);
}

MomentEstimate mc_second_moment_trace(const GroupSpec& g, const Operator& v, const SecondMomentObservable& o,
                                      std::size_t samples, std::uint64_t seed) {
  const auto d = static_cast<Index>(g.dimension());
  if (v.rows() != d || v.cols() != d)
    throw ValidationError("perturbation dimension " + std::to_string(v.rows()) + " does not match group dimension " +
                          std::to_string(d));
  const int n = qubits_of(v);
  if (const auto* op = std::get_if<Operator>(&o)) {
    check_operator_budget(n);
    if (op->rows() != d * d) throw ValidationError("observable must act on two copies");
  } else {
    check_state_budget(n);
  }
  return monte_carlo(samples, seed, [&](Rng& rng) {
    const Operator u = sample_element(g, rng);
    const Operator w = u * v * u.adjoint();
    if (const auto* tag = std::get_if<SwapRegionTag>(&o)) return swap_region_trace(w, w, tag->region, n).real();
    return (kron(w, w) * std::get<Operator>(o)).trace().real();
  });
}

WeingartenCoefficients weingarten_coefficients(FormKind kind, std::int64_t d) {
  if (d < 2) throw ValidationError("dimension must be at least 2");
  if (kind == FormKind::symplectic && (d % 2 != 0 || d < 4))
    throw ValidationError("symplectic coefficients need even d >= 4");
  const bool orth = kind == FormKind::orthogonal;
  const Rational den = orth ? Rational((d + 2) * (d - 1)) : Rational((d - 2) * (d + 1));
  const Rational a = Rational(-2) / den, b = Rational(d) / den, c = (orth ? Rational(d) : Rational(-d)) / den;
  return {str(a), str(b), str(c), to_double(a), to_double(b), to_double(c)};
}

Operator weingarten_reconstruction(FormKind kind, const BilinearForm& omega) {
  const int n = omega.num_qubits();
  check_operator_budget(n);
  const Index d = Index{1} << n;
  const auto w = weingarten_coefficients(kind, d);
  const Operator om = omega.dense();
  // (1 (x) Omega)|Phi> has coefficient matrix Omega^T / sqrt(d); <Phi|(1 (x) Omega) has Omega / sqrt(d).
  const StateVector ket = matrix_to_state(om.transpose()) / std::sqrt(static_cast<double>(d));
  const StateVector bra = matrix_to_state(om) / std::sqrt(static_cast<double>(d));
  Operator out = w.alpha * Operator::Identity(d * d, d * d) + w.beta * swap_region(QubitSet::all(n), n);
  out += w.gamma * static_cast<double>(d) * (ket * bra.transpose());
  return out;
}

WeingartenCheck weingarten_check(FormKind kind, int n, std::size_t samples, std::uint64_t seed, double k_sigma) {
  require_samples(samples);
  if (n < 2) throw ValidationError("the Weingarten check needs n >= 2");
  check_operator_budget(n);
  const GroupSpec g = kind == FormKind::orthogonal ? GroupSpec::orthogonal(n) : GroupSpec::symplectic(n);
  const Index d = Index{1} << n;
  const Operator v = to_dense(PauliString::single(n, 1, 'Z'));
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<EntryMoments> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    parts[b].init(d * d, d * d);
    const std::size_t end = std::min(samples, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      Rng rng = Rng::stream(seed, i);
      const Operator u = sample_haar(g, rng);
      const Operator w = u * v * u.adjoint();
      parts[b].add(kron(w, w));
    }
  });
  const EntryMoments tot = pairwise_merge(parts, 0, blocks);
  const double m = static_cast<double>(samples);
  const Operator recon = weingarten_reconstruction(kind, *g.form);
  WeingartenCheck out;
  out.coefficients = weingarten_coefficients(kind, d);
  out.samples = samples;
  auto check = [&](const Eigen::ArrayXXd& s1, const Eigen::ArrayXXd& s2, const Eigen::MatrixXd& target) {
    for (Index c = 0; c < s1.cols(); ++c)
      for (Index r = 0; r < s1.rows(); ++r) {
        const double mean = s1(r, c) / m;
        const double var = std::max(0.0, (s2(r, c) / m - mean * mean) * m / std::max(1.0, m - 1.0));
        const double se = std::sqrt(var / m);
        const double dev = std::abs(mean - target(r, c));
        ++out.entries;
        out.max_abs_dev = std::max(out.max_abs_dev, dev);
        if (se > 1e-12) out.max_z = std::max(out.max_z, dev / se);
        if (dev > k_sigma * se + 1e-9) ++out.outliers;
      }
  };
  check(tot.re, tot.re2, recon.real());
  check(tot.im, tot.im2, recon.imag());
  out.pass = out.outliers == 0;
  return out;
}

QuadraticBasis quadratic_symmetry_basis(const GeneratorSet& s, const std::vector<PauliString>& linear_syms) {
  detail::require(!linear_syms.empty(), "at least one linear symmetry is required");
  const int n = s.num_qubits();
  for (const auto& l : linear_syms) {
    detail::require(l.num_qubits() == n, "linear symmetry has the wrong qubit count");
    for (const auto& h : s.generators())
      if (!commutes(l, h)) throw ValidationError("linear symmetry " + l.str() + " does not commute with " + h.str());
  }
  QuadraticBasis b;
  b.n = n;
  b.linear_symmetries = linear_syms;
  b.components = census(s);
  const auto id = component_table(s, b.components);
  for (std::size_t j = 0; j < linear_syms.size(); ++j)
    for (const auto& c : b.components) {
      QuadraticLabel l;
      l.j = j;
      l.component = c.id;
      l.component_size = c.size;
      l.representative = c.representative;
      l.partner_component = id[encode_vertex(linear_syms[j] * c.representative)];
      b.labels.push_back(l);
    }
  // Gram matrix in Pauli arithmetic: <S (x) A, S' (x) B> = d^2 [S = S'] [A = B] conj(phase_A) phase_B.
  const std::size_t k = b.labels.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = a; c < k; ++c) {
      const auto& la = b.labels[a];
      const auto& lc = b.labels[c];
      cplx g = 0;
      if (la.component == lc.component) {
        const auto members = component(la.representative, s, {kDefaultGraphBudget, false}).members();
        for (VertexCode v : members) {
          const PauliString sv = decode_vertex(v, n);
          const PauliString ta = linear_syms[la.j] * sv, tc = linear_syms[lc.j] * sv;
          if (ta.equal_up_to_phase(tc)) g += std::conj(i_pow(ta.phase())) * i_pow(tc.phase());
        }
        g /= static_cast<double>(members.size());
      }
      const double err = std::abs(g - (a == c ? cplx(1.0) : cplx(0.0)));
      b.max_gram_error = std::max(b.max_gram_error, err);
      if (err > 1e-12) {
        b.labels[a].degenerate = true;
        b.labels[c].degenerate = true;
      }
    }
  return b;
}

Operator quadratic_basis_element(const QuadraticBasis& basis, const GeneratorSet& s, std::size_t label) {
  detail::require(label < basis.labels.size(), "label index out of range");
  const int n = basis.n;
  check_operator_budget(n);
  const auto& l = basis.labels[label];
  const auto members = component(l.representative, s, {kDefaultGraphBudget, false}).members();
  const Index d = Index{1} << n;
  Operator q = Operator::Zero(d * d, d * d);
  for (VertexCode v : members) {
    const PauliString sv = decode_vertex(v, n);
    q += kron(to_dense(sv), to_dense(basis.linear_symmetries[l.j] * sv));
  }
  return q / (static_cast<double>(d) * std::sqrt(static_cast<double>(members.size())));
}

std::vector<cplx> quadratic_overlaps(const QuadraticBasis& basis, const GeneratorSet& s, const Operator& w) {
  const int n = basis.n;
  if (w.rows() != (Index{1} << n)) throw ValidationError("operator dimension does not match basis");
  const auto a = all_coefficients(w, n);
  const double d = static_cast<double>(w.rows());
  std::vector<cplx> out;
  for (const auto& l : basis.labels) {
    cplx acc = 0;
    const auto comp = component(l.representative, s, {kDefaultGraphBudget, false});
    for (VertexCode v : comp.members()) {
      const PauliString t = basis.linear_symmetries[l.j] * decode_vertex(v, n);
      acc += a[v] * std::conj(i_pow(t.phase())) * a[encode_vertex(t)];
    }
    out.push_back(acc * d / std::sqrt(static_cast<double>(l.component_size)));
  }
  return out;
}

SpreadUniformity haar_spread_uniformity(const GroupSpec& g, const PauliString& p, std::size_t samples,
                                        std::uint64_t seed, double k_sigma) {
  require_samples(samples);
  detail::require(g.generators.has_value(), "spread uniformity needs a generator set");
  const int n = g.n;
  check_state_budget(n);
  const auto comp = component(p, *g.generators, {kDefaultGraphBudget, false});
  const auto& members = comp.members();
  SpreadUniformity out;
  for (VertexCode v : members) out.vertices.push_back(decode_vertex(v, n));
  out.predicted = 1.0 / static_cast<double>(members.size());
  const Operator pd = to_dense(p.phaseless());
  std::vector<std::vector<double>> mass(members.size(), std::vector<double>(samples));
  std::vector<double> off(samples), total_err(samples);
  parallel_for(samples, [&](std::size_t i) {
    Rng rng = Rng::stream(seed, i);
    const Operator u = sample_haar(g, rng);
    const auto a = all_coefficients(u * pd * u.adjoint(), n);
    double inside = 0, outside = 0;
    for (std::size_t k = 0; k < members.size(); ++k) {
      mass[k][i] = std::norm(a[members[k]]);
      inside += mass[k][i];
    }
    for (std::size_t code = 0; code < a.size(); ++code)
      if (!comp.contains_code(static_cast<VertexCode>(code))) outside += std::norm(a[code]);
    off[i] = outside;
    total_err[i] = std::abs(inside + outside - 1.0);
  });
  for (std::size_t k = 0; k < members.size(); ++k) {
    out.masses.push_back(estimate(mass[k], seed));
    if (!out.masses.back().within(out.predicted, k_sigma)) ++out.outliers;
  }
  out.max_off_component_mass = *std::max_element(off.begin(), off.end());
  out.max_total_mass_error = *std::max_element(total_err.begin(), total_err.end());
  return out;
}

MomentEstimate frobenius_schur(const GroupSpec& g, const std::optional<Operator>& projector, std::size_t samples,
                               std::uint64_t seed) {
  const auto d = static_cast<Index>(g.dimension());
  if (projector && (projector->rows() != d || projector->cols() != d))
    throw ValidationError("projector dimension does not match group dimension");
  if (g.n > kDefaultDenseCap) throw BudgetError("dense cap exceeded");
  return monte_carlo(samples, seed, [&](Rng& rng) {
    const Operator u = sample_power_trace_input(g, rng);
    const Operator u2 = u * u;
    return (projector ? (*projector * u2).trace() : u2.trace()).real();
  });
}

double frobenius_schur_clifford_exact(int n) {
  const auto& reps = enumerate_clifford(n);
  cplx acc = 0;
  for (const auto& c : reps) {
    const cplx t = (c * c).trace();
    for (int k = 0; k < 8; ++k) acc += std::polar(1.0, k * std::numbers::pi / 2) * t;
  }
  return acc.real() / static_cast<double>(8 * reps.size());
}

Operator even_parity_projector(int n) {
  const Index d = Index{1} << n;
  const Operator z = to_dense(PauliString::parse(std::string(static_cast<std::size_t>(n), 'Z')));
  return 0.5 * (Operator::Identity(d, d) + z);
}

MomentEstimate mixed_unitary_commutant_dimension(const CommutantSource& source) {
  if (const auto* h = std::get_if<HaarUnitarySource>(&source)) {
    return monte_carlo(h->samples, h->seed, [&](Rng& rng) {
      const Operator u = haar_unitary(h->d, rng);
      return std::pow(std::abs(u.trace()), 4);
    });
  }
  std::vector<double> values;
  if (const auto* c = std::get_if<CliffordEnumeration>(&source)) {
    for (const auto& u : enumerate_clifford(c->n)) values.push_back(std::pow(std::abs(u.trace()), 4));
  } else {
    const int n = std::get<PauliEnumeration>(source).n;
    if (n < 1 || n > 6) throw BudgetError("Pauli enumeration limited to n <= 6");
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t code = 0; code < total; ++code)
      values.push_back(std::pow(std::abs(to_dense(decode_vertex(static_cast<VertexCode>(code), n)).trace()), 4));
  }
  MomentEstimate e = estimate(values);
  e.std_error = 0.0;
  return e;
}

MomentEstimate mixed_unitary_fs(std::int64_t d, std::size_t samples, std::uint64_t seed) {
  return monte_carlo(samples, seed, [&](Rng& rng) {
    const Operator u = haar_unitary(d, rng);
    return std::norm((u * u).trace());
  });
}

}  // namespace gdesign
