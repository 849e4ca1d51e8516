#include "gdesign/reproduce.hpp"

#include <cmath>
#include <functional>

#include "gdesign/bounds.hpp"
#include "gdesign/cgraph.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/experiments.hpp"
#include "gdesign/moments.hpp"

namespace gdesign {
namespace {

constexpr double kSigma = 5.0;

ReproduceCheck exact_check(std::string name, const std::string& predicted, double predicted_value, double measured) {
  ReproduceCheck c;
  c.name = std::move(name);
  c.predicted = predicted;
  c.predicted_value = predicted_value;
  c.measured = measured;
  c.tolerance = "exact";
  c.pass = std::abs(measured - predicted_value) <= 1e-12 * std::max(1.0, std::abs(predicted_value));
  return c;
}

ReproduceCheck exact_check(std::string name, const Rational& predicted, const Rational& measured) {
  ReproduceCheck c = exact_check(std::move(name), to_string(predicted), to_double(predicted), to_double(measured));
  c.pass = predicted == measured;
  return c;
}

ReproduceCheck stat_check(std::string name, const std::string& predicted, double predicted_value, double mean,
                          double std_error) {
  ReproduceCheck c;
  c.name = std::move(name);
  c.predicted = predicted;
  c.predicted_value = predicted_value;
  c.measured = mean;
  c.std_error = std_error;
  c.tolerance = "5 stderr";
  c.pass = MomentEstimate{mean, std_error, 0, 0}.within(predicted_value, kSigma);
  return c;
}

ReproduceCheck stat_check(std::string name, const Rational& predicted, const MomentEstimate& e) {
  return stat_check(std::move(name), to_string(predicted), to_double(predicted), e.mean, e.std_error);
}

ExperimentConfig depth_config(GroupKind g, int n, std::uint64_t seed, std::size_t m) {
  ExperimentConfig c;
  c.experiment = g == GroupKind::mixed_unitary ? ExperimentKind::mixed_unitary : ExperimentKind::depth;
  c.group = g;
  c.n = n;
  c.seed = seed;
  c.samples = m;
  return c;
}

void shallow_checks(const std::string& tag, const ExperimentResult& r, std::vector<ReproduceCheck>& out) {
  ReproduceCheck c = exact_check(tag + " p_shallow per sample", "1", 1.0, r.min_shallow_probability);
  c.pass = r.exactness_failures == 0 && r.lightcone_violations == 0 && r.min_shallow_probability >= 1.0 - 1e-9;
  c.tolerance = "1e-9 per sample";
  out.push_back(c);
}

void experiment_checks(const std::string& tag, const ExperimentResult& r, std::vector<ReproduceCheck>& out) {
  shallow_checks(tag, r, out);
  if (!r.analytic_p_haar) return;
  out.push_back(stat_check(tag + " p_haar", *r.analytic_p_haar, r.p_haar));
  out.push_back(stat_check(tag + " mc_bound", to_string(*r.analytic_bound), to_double(*r.analytic_bound), r.mc_bound,
                           r.mc_bound_std_error));
}

using Runner = std::function<void(ReproduceReport&)>;

void run_depth_table(ReproduceReport& rep) {
  const std::uint64_t s = rep.seed;
  const std::size_t m = rep.samples;
  experiment_checks("matchgate n=4", run_experiment(depth_config(GroupKind::matchgate, 4, s, m)), rep.checks);
  experiment_checks("orthogonal n=3", run_experiment(depth_config(GroupKind::orthogonal, 3, s, m)), rep.checks);
  experiment_checks("symplectic n=3", run_experiment(depth_config(GroupKind::symplectic, 3, s, m)), rep.checks);
  experiment_checks("mixed-unitary n=2", run_experiment(depth_config(GroupKind::mixed_unitary, 2, s, m)),
                    rep.checks);
}

void run_matchgate_depth(ReproduceReport& rep) {
  const auto r = run_experiment(depth_config(GroupKind::matchgate, 4, rep.seed, rep.samples));
  experiment_checks("matchgate n=4", r, rep.checks);
  rep.checks.push_back(exact_check("bound 2 - (n+1)/(2n-1) at n=4", *matchgate_depth_bound(4).exact,
                                   *r.analytic_bound));
}

void run_form_depth(ReproduceReport& rep, GroupKind g) {
  const FormKind kind = g == GroupKind::orthogonal ? FormKind::orthogonal : FormKind::symplectic;
  const std::string tag = to_string(g) + " n=3";
  const auto r = run_experiment(depth_config(g, 3, rep.seed, rep.samples));
  experiment_checks(tag, r, rep.checks);
  rep.checks.push_back(exact_check(tag + " 2 (1 - p_exact) = closed-form bound", *form_bound(kind, 8, 4).exact,
                                   *discrimination_bound(Rational(1), exact_haar_povm_probability(kind, 8, 4)).exact));
}

void run_pauli_compatible(ReproduceReport& rep) {
  for (int n : {4, 6}) {
    const auto v = PauliString::single(n, n / 2 - 1, 'X');
    const auto ratio = r_fraction(v, matchgate_standard_generators(n), QubitSet::range(0, n - 1));
    const Rational r(ratio.numerator, ratio.denominator);
    const Rational predicted(binomial(2 * n - 2, n - 1), binomial(2 * n, n - 1));
    const std::string tag = "n=" + std::to_string(n);
    rep.checks.push_back(exact_check(tag + " r = C(2n-2,n-1)/C(2n,n-1)", predicted, r));
    rep.checks.push_back(
        exact_check(tag + " 2 (1 - r) = depth bound", *matchgate_depth_bound(n).exact, *pauli_compatible_bound(r).exact));
    rep.checks.push_back(exact_check(tag + " majorana count of X_{n/2}", std::to_string(n - 1), n - 1,
                                     majorana_count(v)));
  }
}

void run_gatecount(ReproduceReport& rep) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::gate_count;
  c.n = 3;
  c.full_generators = true;
  c.seed = rep.seed;
  c.samples = rep.samples;
  const auto r = run_experiment(c);
  experiment_checks("matchgate n=3 N=1", r, rep.checks);
  rep.checks.push_back(exact_check("ball size", "10", 10, static_cast<double>(r.ball_size)));
  rep.checks.push_back(exact_check("component size", "20", 20, static_cast<double>(r.component_size)));
  for (int n : {3, 4}) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i + 1;
    const auto profile = ball_profile(majorana_product(idx, n).phaseless(), matchgate_full_generators(n));
    for (std::size_t k = 0; k < profile.size(); ++k) {
      const BigInt predicted = johnson_ball_size(n, static_cast<unsigned>(k));
      rep.checks.push_back(exact_check("n=" + std::to_string(n) + " ball N=" + std::to_string(k), predicted.str(),
                                       predicted.convert_to<double>(), static_cast<double>(profile[k])));
    }
  }
}

void run_weingarten(ReproduceReport& rep) {
  for (auto kind : {FormKind::orthogonal, FormKind::symplectic})
    for (int n : {2, 3}) {
      const auto w = weingarten_check(kind, n, rep.samples, rep.seed);
      const std::string tag = std::string(kind == FormKind::orthogonal ? "orthogonal" : "symplectic") +
                              " d=" + std::to_string(1 << n);
      ReproduceCheck c;
      c.name = tag + " entrywise reconstruction (" + w.coefficients.alpha_exact + ", " + w.coefficients.beta_exact +
               ", " + w.coefficients.gamma_exact + ")";
      c.predicted = "0 outliers";
      c.measured = static_cast<double>(w.outliers);
      c.std_error = w.max_z;
      c.tolerance = "5 stderr per entry";
      c.pass = w.pass;
      rep.checks.push_back(c);
    }
  for (auto kind : {FormKind::orthogonal, FormKind::symplectic})
    for (std::uint64_t d = 4; d <= 64; d *= 2)
      for (std::uint64_t dl = 2; dl < d; dl *= 2)
        rep.checks.push_back(exact_check(
            std::string(kind == FormKind::orthogonal ? "orthogonal" : "symplectic") + " d=" + std::to_string(d) +
                " d_L=" + std::to_string(dl) + " exact probability vs bound",
            *form_bound(kind, d, dl).exact,
            *discrimination_bound(Rational(1), exact_haar_povm_probability(kind, d, dl)).exact));
}

void run_frobenius_schur(ReproduceReport& rep) {
  const std::size_t m = rep.samples;
  const std::uint64_t s = rep.seed;
  const auto fs = [&](const char* name, const GroupSpec& g, const std::optional<Operator>& proj, double target,
                      std::uint64_t offset) {
    const auto e = frobenius_schur(g, proj, m, s + offset);
    rep.checks.push_back(stat_check(name, format_double(target), target, e.mean, e.std_error));
  };
  fs("unitary d=4", GroupSpec::unitary(2), std::nullopt, 0.0, 0);
  fs("orthogonal d=4", GroupSpec::orthogonal(2), std::nullopt, 1.0, 1);
  fs("symplectic d=4", GroupSpec::symplectic(2), std::nullopt, -1.0, 2);
  fs("unitary d=8", GroupSpec::unitary(3), std::nullopt, 0.0, 3);
  fs("orthogonal d=8", GroupSpec::orthogonal(3), std::nullopt, 1.0, 4);
  fs("symplectic d=8", GroupSpec::symplectic(3), std::nullopt, -1.0, 5);
  fs("matchgate even spinor n=2", GroupSpec::matchgate(2), even_parity_projector(2), -1.0, 6);
  fs("matchgate even spinor n=4", GroupSpec::matchgate(4), even_parity_projector(4), 1.0, 7);
  const auto mu = mixed_unitary_fs(4, m, s + 8);
  rep.checks.push_back(stat_check("mixed-unitary E|Tr U^2|^2 d=4", "2", 2.0, mu.mean, mu.std_error));
}

void run_commutant(ReproduceReport& rep) {
  const auto cl = mixed_unitary_commutant_dimension(CliffordEnumeration{1});
  rep.checks.push_back(exact_check("Clifford n=1 mean |Tr U|^4", "2", 2.0, cl.mean));
  const auto pa = mixed_unitary_commutant_dimension(PauliEnumeration{1});
  rep.checks.push_back(exact_check("Pauli n=1 mean |Tr U|^4", "4", 4.0, pa.mean));
  const auto haar = mixed_unitary_commutant_dimension(HaarUnitarySource{4, rep.samples, rep.seed});
  rep.checks.push_back(stat_check("Haar d=4 mean |Tr U|^4", "2", 2.0, haar.mean, haar.std_error));
}

struct Entry {
  ReproduceTarget target;
  std::size_t default_samples;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e{
      {{"depth-table", "table1", "depth experiments for every form-preserving group and the mixed-unitary k=1 case"},
       20000,
       run_depth_table},
      {{"matchgate-depth", "eq6", "matchgate depth experiment at n=4"}, 20000, run_matchgate_depth},
      {{"orthogonal-depth", "eq9", "orthogonal depth experiment at n=3"},
       20000,
       [](ReproduceReport& r) { run_form_depth(r, GroupKind::orthogonal); }},
      {{"symplectic-depth", "symplectic", "symplectic depth experiment at n=3"},
       20000,
       [](ReproduceReport& r) { run_form_depth(r, GroupKind::symplectic); }},
      {{"pauli-compatible", "cor4", "component ratio r and the Pauli-compatible bound for matchgates"},
       1,
       run_pauli_compatible},
      {{"matchgate-gatecount", "thm2-matchgate", "gate-count experiment and Johnson-graph balls"},
       20000,
       run_gatecount},
      {{"weingarten", "appendixC3", "orthogonal and symplectic second-moment coefficients"}, 20000, run_weingarten},
      {{"frobenius-schur", "appendixD", "Frobenius-Schur indicators"}, 20000, run_frobenius_schur},
      {{"commutant", "propC5", "mixed-unitary commutant dimensions"}, 20000, run_commutant},
  };
  return e;
}

const Entry& find_entry(std::string_view id) {
  for (const auto& e : entries())
    if (e.target.name == id || e.target.alias == id) return e;
  std::string known;
  for (const auto& e : entries()) known += (known.empty() ? "" : ", ") + e.target.name + " (" + e.target.alias + ")";
  throw ValidationError("unknown reproduce target '" + std::string(id) + "'; known: " + known);
}

}  // namespace

bool ReproduceReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

const std::vector<ReproduceTarget>& reproduce_targets() {
  static const std::vector<ReproduceTarget> t = [] {
    std::vector<ReproduceTarget> out;
    for (const auto& e : entries()) out.push_back(e.target);
    return out;
  }();
  return t;
}

const ReproduceTarget& find_reproduce_target(std::string_view id) { return find_entry(id).target; }

ReproduceReport reproduce(std::string_view id, std::uint64_t seed, std::size_t samples) {
  const Entry& e = find_entry(id);
  ReproduceReport r;
  r.target = e.target.name;
  r.description = e.target.description;
  r.seed = seed;
  r.samples = samples ? samples : e.default_samples;
  if (e.default_samples > 1) detail::require(r.samples >= 2, "at least two samples are required");
  e.run(r);
  return r;
}

Json to_json(const ReproduceReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["target"] = r.target;
  j["description"] = r.description;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x;
    x["check"] = c.name;
    x["predicted"] = c.predicted;
    x["predicted_value"] = c.predicted_value;
    x["measured"] = c.measured;
    x["stderr"] = c.std_error;
    x["tolerance"] = c.tolerance;
    x["pass"] = c.pass;
    checks.push_back(x);
  }
  j["checks"] = checks;
  j["pass"] = r.pass();
  return j;
}

}  // namespace gdesign
