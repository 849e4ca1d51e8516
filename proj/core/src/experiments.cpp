#include "gdesign/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gdesign/cgraph.hpp"
#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

constexpr double kExactTol = 1e-9;

GroupSpec make_group(const ExperimentConfig& c) {
  if (c.group == GroupKind::custom)
    throw ValidationError("custom groups have no Haar sampler; experiments need a named group");
  if (c.group == GroupKind::matchgate) return GroupSpec::matchgate(c.n, c.full_generators);
  return GroupSpec::make(c.group, c.n);
}

int deepest_fitting(const QubitSet& support, const QubitSet& region, const Adjacency& adj) {
  int depth = 0;
  while (depth < 4 * adj.num_qubits() + 4 &&
         region.contains(circuit_lightcone(support, brickwork_layout(adj, depth + 1))))
    ++depth;
  return depth;
}

void check_region(const ExperimentConfig& c) {
  const QubitSet all = QubitSet::all(c.n);
  if (!all.contains(*c.region)) throw ValidationError("region " + c.region->str() + " exceeds the qubit count");
  if (c.region->complement(c.n).empty()) throw ValidationError("region complement must be nonempty");
  if (!c.region->contains(support(*c.perturbation)))
    throw ValidationError("perturbation " + c.perturbation->str() + " is not supported inside region " +
                          c.region->str());
  if (c.perturbation->is_identity()) throw ValidationError("perturbation must not be the identity");
}

struct Sides {
  std::vector<double> shallow_exact;
  std::vector<double> shallow;
  std::vector<double> haar;
  std::vector<char> in_cone;
};

double draw(double p, bool shots, Rng& rng) {
  if (!shots) return p;
  return rng.uniform() < p ? 1.0 : 0.0;
}

ExperimentResult finish(ExperimentResult r, const Sides& s) {
  const auto& c = r.config;
  r.p_shallow = estimate(s.shallow, c.seed);
  r.p_haar = estimate(s.haar, c.seed);
  r.mc_bound = discrimination_bound(std::clamp(r.p_shallow.mean, 0.0, 1.0), std::clamp(r.p_haar.mean, 0.0, 1.0));
  r.mc_bound_std_error = 2.0 * std::hypot(r.p_shallow.std_error, r.p_haar.std_error);
  r.min_shallow_probability = s.shallow_exact.empty() ? 1.0 : *std::min_element(s.shallow_exact.begin(),
                                                                                  s.shallow_exact.end());
  for (std::size_t i = 0; i < s.shallow_exact.size(); ++i) {
    if (!s.in_cone[i])
      ++r.lightcone_violations;
    else if (s.shallow_exact[i] < 1.0 - kExactTol)
      ++r.exactness_failures;
  }
  if (r.analytic_p_haar) r.analytic_bound = *discrimination_bound(Rational(1), *r.analytic_p_haar).exact;
  return r;
}

Sides allocate(std::size_t m) {
  Sides s;
  s.shallow_exact.assign(m, 0.0);
  s.shallow.assign(m, 0.0);
  s.haar.assign(m, 0.0);
  s.in_cone.assign(m, 0);
  return s;
}

/// Omega V^T Omega^-1 = V, the condition under which the Weingarten closed form applies.
bool form_compatible_perturbation(const PauliString& v, const BilinearForm& omega) {
  if (!omega.is_pauli()) return false;
  return transpose_sign(v) * (commutes(v, *omega.pauli()) ? 1 : -1) == 1;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::depth: return "depth";
    case ExperimentKind::mixed_unitary: return "mixed-unitary";
    case ExperimentKind::gate_count: return "gate-count";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  if (name == "depth") return ExperimentKind::depth;
  if (name == "mixed-unitary" || name == "mixed_unitary") return ExperimentKind::mixed_unitary;
  if (name == "gate-count" || name == "gate_count" || name == "gatecount") return ExperimentKind::gate_count;
  throw ValidationError("unknown experiment '" + std::string(name) + "' (expected depth, mixed-unitary, gate-count)");
}

ExperimentConfig resolve_config(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  detail::require(c.n >= 1, "n must be positive");
  detail::require(c.samples >= 2, "at least two samples are required");
  if (c.perturbation && c.perturbation->num_qubits() != c.n)
    throw ValidationError("perturbation " + c.perturbation->str() + " does not have n = " + std::to_string(c.n) +
                          " qubits");
  if (c.depth && *c.depth < 0) throw ValidationError("depth must be nonnegative");
  if (c.gates && *c.gates < 0) throw ValidationError("gate count must be nonnegative");
  const Adjacency adj = Adjacency::parse(c.adjacency, c.n);

  switch (c.experiment) {
    case ExperimentKind::depth: {
      detail::require(c.n >= 2, "the depth experiment needs n >= 2");
      if (c.group == GroupKind::matchgate) {
        const bool defaults = !c.perturbation && !c.region && !c.depth;
        if (defaults && c.n % 2 != 0)
          throw ValidationError("the default matchgate perturbation X_{n/2} needs an even n, got " +
                                std::to_string(c.n));
        const int q = c.n / 2 - 1;
        if (!c.perturbation) c.perturbation = PauliString::single(c.n, q, 'X');
        if (defaults) {
          c.depth = c.n / 2 - 1;
          c.region = lightcone(support(*c.perturbation), *c.depth, adj);
        }
      } else if (c.group == GroupKind::symplectic) {
        detail::require(c.n >= 3 || c.perturbation, "the default symplectic experiment needs n >= 3");
        if (!c.perturbation) c.perturbation = PauliString::single(c.n, 1, 'Z');
        if (!c.region && !c.depth) c.depth = c.n - 2;
      } else {
        if (!c.perturbation) c.perturbation = PauliString::single(c.n, 0, 'Z');
        if (!c.region && !c.depth) c.depth = c.n - 2;
      }
      if (!c.region) c.region = QubitSet::range(0, c.n - 1);
      if (!c.depth) c.depth = deepest_fitting(support(*c.perturbation), *c.region, adj);
      break;
    }
    case ExperimentKind::mixed_unitary: {
      detail::require(c.n >= 2, "the mixed-unitary experiment needs n >= 2");
      c.group = GroupKind::mixed_unitary;
      if (!c.perturbation) c.perturbation = PauliString::single(c.n, 0, 'Z');
      if (!c.region) c.region = QubitSet::range(0, c.n - 1);
      if (!c.depth) c.depth = deepest_fitting(support(*c.perturbation), *c.region, adj);
      break;
    }
    case ExperimentKind::gate_count: {
      if (!c.perturbation) {
        std::vector<int> idx(c.n);
        std::iota(idx.begin(), idx.end(), 1);
        c.perturbation = majorana_product(idx, c.n).phaseless();
      }
      if (!c.gates) c.gates = 1;
      if (c.perturbation->is_identity()) throw ValidationError("perturbation must not be the identity");
      break;
    }
  }
  if (c.experiment != ExperimentKind::gate_count) check_region(c);
  return c;
}

ExperimentConfig default_config(ExperimentKind experiment, GroupKind group, int n) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.group = group;
  c.n = n;
  c.full_generators = experiment == ExperimentKind::gate_count;
  return resolve_config(c);
}

double depth_povm_probability(const Operator& u, const PauliString& v, const BilinearForm& omega,
                              const QubitSet& region) {
  const int n = v.num_qubits();
  const double d = static_cast<double>(u.rows());
  const Operator om = omega.dense();
  const Operator m0 = to_dense(v) * om.transpose() / std::sqrt(d);
  const Operator m1 = u * m0 * u.transpose();
  const Operator m2 = m1 * om.inverse().transpose();
  return complement_bell_probability(m2, region, n);
}

double mixed_unitary_povm_probability(const Operator& u, const PauliString& v, const QubitSet& region) {
  const double d = static_cast<double>(u.rows());
  const Operator m = u * to_dense(v) * u.adjoint() / std::sqrt(d);
  return complement_bell_probability(m, region, v.num_qubits());
}

double pauli_spread_mass(const Operator& u, const PauliString& p, const std::vector<PauliString>& vertices) {
  const int n = p.num_qubits();
  check_state_budget(n);
  if (u.rows() != (Eigen::Index{1} << n)) throw ValidationError("operator dimension does not match the Pauli");
  const Operator w = u * to_dense(p.phaseless()) * u.adjoint();
  const double d = static_cast<double>(w.rows());
  std::vector<double> terms;
  terms.reserve(vertices.size());
  for (const auto& t : vertices) terms.push_back(std::norm(trace_product(t.phaseless(), w) / d));
  return pairwise_sum(terms);
}

ExperimentResult run_depth_discrimination(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.experiment = ExperimentKind::depth;
  c = resolve_config(c);
  check_state_budget(c.n);
  const GroupSpec g = make_group(c);
  if (!g.form) throw ValidationError("group " + g.name() + " has no invariant bilinear form");
  const Adjacency adj = Adjacency::parse(c.adjacency, c.n);
  const PauliString v = *c.perturbation;
  const QubitSet region = *c.region;

  ExperimentResult r;
  r.config = c;
  r.form = g.form->str();
  Sides s = allocate(c.samples);
  parallel_for(c.samples, [&](std::size_t i) {
    Rng shallow_rng = Rng::stream(c.seed, 2 * i);
    const ShallowSample sh = sample_shallow(g, *c.depth, adj, shallow_rng);
    const double ps = depth_povm_probability(sh.u, v, *g.form, region);
    s.in_cone[i] = region.contains(circuit_lightcone(support(v), sh.layout));
    s.shallow_exact[i] = ps;
    s.shallow[i] = draw(ps, c.shot_mode, shallow_rng);
    Rng haar_rng = Rng::stream(c.seed, 2 * i + 1);
    const double ph = depth_povm_probability(sample_haar(g, haar_rng), v, *g.form, region);
    s.haar[i] = draw(ph, c.shot_mode, haar_rng);
  });

  const auto d = std::uint64_t{1} << c.n;
  const auto d_l = std::uint64_t{1} << region.size();
  if (g.kind == GroupKind::matchgate && g.generators) {
    const auto ratio = r_fraction(v, *g.generators, region);
    r.analytic_p_haar = Rational(ratio.numerator, ratio.denominator);
    r.analytic_ref = "p_haar = r = |component inside region| / |component|; bound 2 (1 - r)";
  } else if ((g.kind == GroupKind::orthogonal || g.kind == GroupKind::symplectic) &&
             form_compatible_perturbation(v, *g.form)) {
    const FormKind kind = g.kind == GroupKind::orthogonal ? FormKind::orthogonal : FormKind::symplectic;
    r.analytic_p_haar = exact_haar_povm_probability(kind, d, d_l);
    r.analytic_ref = form_bound(kind, d, d_l).reference;
  }
  return finish(std::move(r), s);
}

ExperimentResult run_mixed_unitary_discrimination(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.experiment = ExperimentKind::mixed_unitary;
  c = resolve_config(c);
  check_state_budget(c.n);
  const GroupSpec g = GroupSpec::mixed_unitary(c.n);
  const Adjacency adj = Adjacency::parse(c.adjacency, c.n);
  const PauliString v = *c.perturbation;
  const QubitSet region = *c.region;

  ExperimentResult r;
  r.config = c;
  r.form = "identity on U (x) U*";
  Sides s = allocate(c.samples);
  parallel_for(c.samples, [&](std::size_t i) {
    Rng shallow_rng = Rng::stream(c.seed, 2 * i);
    const ShallowSample sh = sample_shallow(g, *c.depth, adj, shallow_rng);
    const double ps = mixed_unitary_povm_probability(sh.u, v, region);
    s.in_cone[i] = region.contains(circuit_lightcone(support(v), sh.layout));
    s.shallow_exact[i] = ps;
    s.shallow[i] = draw(ps, c.shot_mode, shallow_rng);
    Rng haar_rng = Rng::stream(c.seed, 2 * i + 1);
    const double ph = mixed_unitary_povm_probability(sample_haar(g, haar_rng), v, region);
    s.haar[i] = draw(ph, c.shot_mode, haar_rng);
  });
  const auto d = std::uint64_t{1} << c.n;
  const auto d_l = std::uint64_t{1} << region.size();
  r.analytic_p_haar = mixed_unitary_haar_probability(d, d_l);
  r.analytic_ref = mixed_unitary_bound(d, d_l).reference;
  return finish(std::move(r), s);
}

ExperimentResult run_gatecount_discrimination(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.experiment = ExperimentKind::gate_count;
  c = resolve_config(c);
  check_state_budget(c.n);
  const GroupSpec g = make_group(c);
  if (!g.generators) throw ValidationError("group " + g.name() + " has no Pauli generator set");
  const PauliString p = *c.perturbation;
  const auto comp = component(p, *g.generators, {kDefaultGraphBudget, false});
  const auto ball = n_ball(p, *g.generators, *c.gates);
  const auto& allowed = g.generators->generators();

  ExperimentResult r;
  r.config = c;
  r.form = g.form ? g.form->str() : "";
  r.ball_size = ball.size();
  r.component_size = comp.size();
  Sides s = allocate(c.samples);
  parallel_for(c.samples, [&](std::size_t i) {
    Rng shallow_rng = Rng::stream(c.seed, 2 * i);
    const double ps = std::min(1.0, pauli_spread_mass(sample_gate_count(allowed, *c.gates, shallow_rng), p, ball));
    s.in_cone[i] = 1;
    s.shallow_exact[i] = ps;
    s.shallow[i] = draw(ps, c.shot_mode, shallow_rng);
    Rng haar_rng = Rng::stream(c.seed, 2 * i + 1);
    const double ph = std::min(1.0, pauli_spread_mass(sample_haar(g, haar_rng), p, ball));
    s.haar[i] = draw(ph, c.shot_mode, haar_rng);
  });
  if (g.kind == GroupKind::matchgate) {
    r.analytic_p_haar = Rational(r.ball_size, r.component_size);
    r.analytic_ref = neighborhood_ratio_bound(r.ball_size, r.component_size).reference;
  }
  return finish(std::move(r), s);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case ExperimentKind::depth: return run_depth_discrimination(config);
    case ExperimentKind::mixed_unitary: return run_mixed_unitary_discrimination(config);
    case ExperimentKind::gate_count: return run_gatecount_discrimination(config);
  }
  throw ValidationError("unknown experiment");
}

}  // namespace gdesign
