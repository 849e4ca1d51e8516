#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdesign/bounds.hpp"
#include "gdesign/cgraph.hpp"
#include "gdesign/config_io.hpp"
#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/experiments.hpp"
#include "gdesign/groups.hpp"
#include "gdesign/json_writer.hpp"
#include "gdesign/moments.hpp"
#include "gdesign/reproduce.hpp"

#ifndef GDESIGN_VERSION
#define GDESIGN_VERSION "dev"
#endif

using namespace gdesign;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitBudget = 2;
constexpr int kExitChecksFailed = 3;

const std::vector<std::string> kSubcommands{"graph",        "bounds",        "moments",  "discriminate",
                                            "fs-indicator", "mixed-unitary", "reproduce"};

struct Output {
  std::vector<Json> records;
  /// Rows for --format csv; defaults to the records.
  std::optional<Json> csv_rows;
  int status = kExitOk;
};

// ---------------------------------------------------------------- config

std::string flag_name(std::string key) {
  for (char& c : key)
    if (c == '_') c = '-';
  return "--" + key;
}

bool argv_has(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args)
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  return false;
}

std::string scalar_arg(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

/// Splices keys of the --config file into argv after the subcommand, skipping flags given explicitly.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  const Json cfg = read_json_file(path);
  if (!cfg.is_object()) throw ValidationError("--config file must hold a JSON object");
  std::size_t sub = 0;
  for (std::size_t i = 1; i < args.size() && !sub; ++i)
    if (std::find(kSubcommands.begin(), kSubcommands.end(), args[i]) != kSubcommands.end()) sub = i;
  std::vector<std::string> extra;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string& key = it.key();
    const Json& v = it.value();
    if (key == "subcommand") continue;
    if (key == "target") {
      if (v.is_string()) extra.push_back(v.get<std::string>());
      continue;
    }
    const std::string flag = flag_name(key);
    if (argv_has(args, flag) || v.is_null()) continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    if (v.is_array()) {
      std::string joined;
      for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + scalar_arg(v[i]);
      extra.push_back(joined);
    } else {
      extra.push_back(scalar_arg(v));
    }
  }
  if (!sub) {
    if (!cfg.contains("subcommand")) throw ValidationError("no subcommand given on the command line or in --config");
    args.insert(args.begin() + 1, cfg.at("subcommand").get<std::string>());
    sub = 1;
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, extra.begin(), extra.end());
  return args;
}

// ---------------------------------------------------------------- helpers

GroupSpec make_group(const std::string& group, int n, bool full, const std::string& generators) {
  const GroupKind kind = parse_group_kind(group);
  if (kind == GroupKind::custom) {
    if (generators.empty()) throw ValidationError("--group custom requires --generators");
    std::vector<PauliString> gens;
    std::stringstream ss(generators);
    for (std::string item; std::getline(ss, item, ',');) gens.push_back(PauliString::parse(item));
    return GroupSpec::custom(n, GeneratorSet(n, std::move(gens)), std::nullopt, {PauliString::identity(n)});
  }
  if (!generators.empty()) throw ValidationError("--generators is only valid with --group custom");
  if (kind == GroupKind::matchgate) return GroupSpec::matchgate(n, full);
  if (full) throw ValidationError("--full applies to matchgate only");
  return GroupSpec::make(kind, n);
}

const GeneratorSet& require_generators(const GroupSpec& g) {
  if (!g.generators) throw ValidationError("group " + g.name() + " has no Pauli generator set");
  return *g.generators;
}

Json estimate_json(const MomentEstimate& e) { return to_json(e); }

std::uint64_t parse_dim(const std::string& flag, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw ValidationError(flag + ": not a nonnegative integer: '" + v + "'");
  }
}

BigInt parse_big(const std::string& flag, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError(flag + ": not a nonnegative integer: '" + v + "'");
  return BigInt(v);
}

struct Sweep {
  int lo = 0, hi = 0, step = 1;
};

Sweep parse_sweep(const std::string& text) {
  Sweep s;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> s.lo >> c1 >> s.hi) || c1 != ':') throw ValidationError("--sweep expects lo:hi[:step], got '" + text + "'");
  if (in >> c2) {
    if (c2 != ':' || !(in >> s.step)) throw ValidationError("--sweep expects lo:hi[:step], got '" + text + "'");
  }
  if (s.step <= 0 || s.hi < s.lo) throw ValidationError("--sweep range is empty: '" + text + "'");
  return s;
}

// ---------------------------------------------------------------- graph

struct GraphArgs {
  std::string group = "matchgate";
  int n = 0;
  bool full = false;
  std::string generators;
  bool census = false;
  std::string pauli;
  int ball = -1;
  bool profile = false;
  bool diameter = false;
  std::string region;
  int max_qubits = kDefaultGraphBudget;
};

Output run_graph(const GraphArgs& a) {
  const GroupSpec g = make_group(a.group, a.n, a.full, a.generators);
  const GeneratorSet& s = require_generators(g);
  GraphOptions opts;
  opts.max_qubits = a.max_qubits;
  Output out;
  Json j;
  j["schema"] = kSchemaVersion;
  j["group"] = g.name();
  j["n"] = a.n;
  j["generators"] = s.size();
  if (a.census == !a.pauli.empty()) throw ValidationError("graph needs exactly one of --census or --pauli");
  if (a.census) {
    opts.keep_distances = false;
    Json comps = Json::array();
    Json sizes = Json::array();
    for (const auto& e : census(s, opts)) {
      Json c;
      c["id"] = e.id;
      c["size"] = e.size;
      c["representative"] = e.representative.str();
      if (g.kind == GroupKind::matchgate) c["majorana_count"] = majorana_count(e.representative);
      comps.push_back(c);
      sizes.push_back(e.size);
    }
    j["components"] = comps.size();
    j["sizes"] = sizes;
    Json rows = comps;
    j["census"] = comps;
    out.csv_rows = rows;
  } else {
    const PauliString p = PauliString::parse(a.pauli);
    if (p.num_qubits() != a.n) throw ValidationError("--pauli has the wrong number of qubits");
    const auto comp = component(p, s, opts);
    j["pauli"] = p.str();
    j["component_size"] = comp.size();
    j["eccentricity"] = comp.eccentricity();
    if (g.kind == GroupKind::matchgate) j["majorana_count"] = majorana_count(p);
    if (a.ball >= 0) j["ball_size"] = n_ball(p, s, a.ball, opts).size();
    if (a.profile) j["ball_profile"] = ball_profile(p, s, opts);
    if (a.diameter) {
      const auto dm = diameter(comp, s);
      j["diameter"] = dm.value;
      j["diameter_mode"] = dm.mode();
    }
    if (!a.region.empty()) {
      const auto r = r_fraction(p, s, parse_qubit_set(a.region), opts);
      const Rational q(r.numerator, r.denominator);
      j["region"] = parse_qubit_set(a.region).to_vector();
      j["r"] = to_string(q);
      j["r_value"] = r.value();
      const auto b = pauli_compatible_bound(q);
      j["bound"] = b.value;
      j["bound_exact"] = b.exact_string();
      j["reference"] = b.reference;
    }
  }
  out.records.push_back(j);
  return out;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string formula;
  std::optional<int> n;
  std::string d, dl, p_shallow, p_haar, r, ball, component, s_size;
  std::optional<int> gates;
  std::optional<double> c;
  std::string kind = "orthogonal";
  std::string sweep;
};

std::pair<std::uint64_t, std::uint64_t> dims(const BoundsArgs& a, std::optional<int> n) {
  if (!a.d.empty()) {
    if (a.dl.empty()) throw ValidationError("--d requires --dL");
    return {parse_dim("--d", a.d), parse_dim("--dL", a.dl)};
  }
  if (!n) throw ValidationError("formula '" + a.formula + "' needs --d and --dL, or --n");
  if (*n < 2 || *n > 62) throw ValidationError("--n must lie in [2, 62]");
  const std::uint64_t d = std::uint64_t{1} << *n;
  return {d, a.dl.empty() ? d / 2 : parse_dim("--dL", a.dl)};
}

FormKind parse_form_kind(const std::string& k) {
  if (k == "orthogonal") return FormKind::orthogonal;
  if (k == "symplectic") return FormKind::symplectic;
  throw ValidationError("--kind must be orthogonal or symplectic, got '" + k + "'");
}

int need_n(const std::optional<int>& n, const std::string& formula) {
  if (!n) throw ValidationError("formula '" + formula + "' needs --n");
  return *n;
}

Json bound_record(const BoundsArgs& a, std::optional<int> n) {
  const std::string& f = a.formula;
  Json j;
  if (f == "discrimination") {
    if (a.p_shallow.empty() || a.p_haar.empty()) throw ValidationError("discrimination needs --p-shallow and --p-haar");
    j = to_json(discrimination_bound(parse_rational(a.p_shallow), parse_rational(a.p_haar)));
  } else if (f == "matchgate-depth") {
    j = to_json(matchgate_depth_bound(need_n(n, f)));
  } else if (f == "orthogonal" || f == "symplectic" || f == "mixed-unitary") {
    const auto [d, dl] = dims(a, n);
    j = to_json(f == "mixed-unitary" ? mixed_unitary_bound(d, dl)
                                     : form_bound(f == "orthogonal" ? FormKind::orthogonal : FormKind::symplectic, d, dl));
  } else if (f == "exact-probability") {
    const auto [d, dl] = dims(a, n);
    const FormKind k = parse_form_kind(a.kind);
    const Rational p = exact_haar_povm_probability(k, d, dl);
    j["schema"] = kSchemaVersion;
    j["formula"] = f;
    j["inputs"] = {{"kind", a.kind}, {"d", std::to_string(d)}, {"d_L", std::to_string(dl)}};
    j["exact"] = to_string(p);
    j["value"] = to_double(p);
    j["reference"] = k == FormKind::orthogonal
                         ? "(-2 d_L d_Lbar^2 + d d_L^2 d_Lbar + d^2) / (d d_Lbar (d+2)(d-1))"
                         : "(-2 d_L d_Lbar^2 + d d_L^2 d_Lbar - d^2) / (d d_Lbar (d-2)(d+1))";
  } else if (f == "pauli-compatible") {
    if (a.r.empty()) throw ValidationError("pauli-compatible needs --r");
    j = to_json(pauli_compatible_bound(parse_rational(a.r)));
  } else if (f == "neighborhood") {
    if (!a.ball.empty() || !a.component.empty()) {
      if (a.ball.empty() || a.component.empty()) throw ValidationError("neighborhood needs --ball and --component");
      j = to_json(neighborhood_ratio_bound(parse_big("--ball", a.ball), parse_big("--component", a.component)));
    } else {
      const int nn = need_n(n, f);
      if (!a.gates) throw ValidationError("neighborhood with --n needs --N");
      if (nn < 1 || *a.gates < 0) throw ValidationError("--n and --N must be nonnegative");
      j = to_json(neighborhood_ratio_bound(johnson_ball_size(nn, *a.gates), binomial(2 * nn, nn)));
    }
  } else if (f == "simple-gatecount") {
    if (!a.gates) throw ValidationError("simple-gatecount needs --N");
    if (*a.gates < 0) throw ValidationError("--N must be nonnegative");
    BigInt s, comp;
    if (!a.s_size.empty() || !a.component.empty()) {
      if (a.s_size.empty() || a.component.empty()) throw ValidationError("simple-gatecount needs --S and --component");
      s = parse_big("--S", a.s_size);
      comp = parse_big("--component", a.component);
    } else {
      const int nn = need_n(n, f);
      if (nn < 1) throw ValidationError("--n must be positive");
      s = BigInt(nn) * (2 * nn - 1);
      comp = binomial(2 * nn, nn);
    }
    j = to_json(simple_gatecount_bound(s, *a.gates, comp));
  } else if (f == "gatecount-ratio") {
    if (!a.c) throw ValidationError("gatecount-ratio needs --c");
    const int nn = need_n(n, f);
    if (nn < 1) throw ValidationError("--n must be positive");
    const auto g = matchgate_gatecount_ratio(static_cast<unsigned>(nn), *a.c);
    j["schema"] = kSchemaVersion;
    j["formula"] = f;
    j["inputs"] = {{"n", std::to_string(nn)}, {"c", format_double(*a.c)}};
    j["exact"] = g.exact ? Json(to_string(*g.exact)) : Json(nullptr);
    j["value"] = g.exact ? Json(to_double(*g.exact)) : Json(nullptr);
    j["f"] = g.f;
    j["envelope"] = g.envelope;
    j["reference"] = "sum_{k<=n/c} C(n,k)^2 / C(2n,n) <= c(n+c)/(2(c-1) sqrt(pi n)) f(c)^(2n), f(c) = c(c-1)^(1/c-1)/2";
  } else if (f == "envelope-threshold") {
    if (!a.c) throw ValidationError("envelope-threshold needs --c");
    const int nn = need_n(n, f);
    const double c = *a.c;
    if (c != std::floor(c)) throw ValidationError("envelope-threshold needs an integer --c");
    const auto t = envelope_threshold(static_cast<unsigned>(c), static_cast<unsigned>(nn));
    j["schema"] = kSchemaVersion;
    j["formula"] = f;
    j["inputs"] = {{"c", format_double(c)}, {"n_max", std::to_string(nn)}};
    j["threshold"] = t.threshold ? Json(*t.threshold) : Json(nullptr);
    j["reference"] = "smallest multiple of c from which the exact ratio stays below the envelope";
  } else if (f == "stirling") {
    if (!a.c) throw ValidationError("stirling needs --c");
    j["schema"] = kSchemaVersion;
    j["formula"] = f;
    j["inputs"] = {{"c", format_double(*a.c)}};
    j["value"] = stirling_f(*a.c);
    j["reference"] = "f(c) = c (c-1)^(1/c - 1) / 2";
  } else {
    throw ValidationError("unknown --formula '" + f +
                          "' (discrimination, matchgate-depth, orthogonal, symplectic, exact-probability, "
                          "mixed-unitary, pauli-compatible, neighborhood, simple-gatecount, gatecount-ratio, "
                          "envelope-threshold, stirling)");
  }
  return j;
}

Output run_bounds(const BoundsArgs& a) {
  Output out;
  if (a.sweep.empty()) {
    out.records.push_back(bound_record(a, a.n));
    return out;
  }
  const Sweep s = parse_sweep(a.sweep);
  Json rows = Json::array();
  for (int n = s.lo; n <= s.hi; n += s.step) {
    Json j = bound_record(a, n);
    out.records.push_back(j);
    Json row;
    row["n"] = n;
    row["exact"] = j.contains("exact") ? j["exact"] : Json(nullptr);
    row["float"] = j.contains("value") ? j["value"] : Json(nullptr);
    row["reference"] = j["reference"];
    rows.push_back(row);
  }
  out.csv_rows = rows;
  return out;
}

// ---------------------------------------------------------------- moments

struct MomentsArgs {
  std::string check = "weingarten";
  std::string kind = "orthogonal";
  std::string group = "matchgate";
  int n = 2;
  std::string perturbation;
  std::string region;
  std::string pauli;
  std::size_t samples = 20000;
  std::uint64_t seed = 7;
};

Output run_moments(const MomentsArgs& a) {
  Output out;
  Json j;
  j["schema"] = kSchemaVersion;
  j["check"] = a.check;
  j["n"] = a.n;
  if (a.check == "weingarten") {
    const auto w = weingarten_check(parse_form_kind(a.kind), a.n, a.samples, a.seed);
    j["kind"] = a.kind;
    j["d"] = 1 << a.n;
    j["alpha"] = w.coefficients.alpha_exact;
    j["beta"] = w.coefficients.beta_exact;
    j["gamma"] = w.coefficients.gamma_exact;
    j["entries"] = w.entries;
    j["outliers"] = w.outliers;
    j["max_z"] = w.max_z;
    j["max_abs_dev"] = w.max_abs_dev;
    j["pass"] = w.pass;
    j["samples"] = a.samples;
    j["seed"] = a.seed;
    if (!w.pass) out.status = kExitChecksFailed;
  } else if (a.check == "second-moment") {
    const GroupSpec g = make_group(a.group, a.n, false, "");
    const PauliString v = a.perturbation.empty() ? PauliString::single(a.n, 0, 'Z') : PauliString::parse(a.perturbation);
    const QubitSet region = a.region.empty() ? QubitSet::range(0, a.n - 1) : parse_qubit_set(a.region);
    const auto e = mc_second_moment_trace(g, to_dense(v), SwapRegionTag{region}, a.samples, a.seed);
    const double norm = static_cast<double>(std::uint64_t{1} << a.n) *
                        static_cast<double>(std::uint64_t{1} << (a.n - region.size()));
    j["group"] = g.name();
    j["perturbation"] = v.str();
    j["region"] = region.to_vector();
    j["trace"] = estimate_json(e);
    j["p_haar"] = e.mean / norm;
    j["p_haar_stderr"] = e.std_error / norm;
  } else if (a.check == "spread") {
    const GroupSpec g = make_group(a.group, a.n, false, "");
    const PauliString p = a.pauli.empty() ? PauliString::single(a.n, 0, 'Z') : PauliString::parse(a.pauli);
    const auto s = haar_spread_uniformity(g, p, a.samples, a.seed);
    j["group"] = g.name();
    j["pauli"] = p.str();
    j["component_size"] = s.vertices.size();
    j["predicted"] = s.predicted;
    j["outliers"] = s.outliers;
    j["max_off_component_mass"] = s.max_off_component_mass;
    j["max_total_mass_error"] = s.max_total_mass_error;
    Json masses = Json::array();
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
      masses.push_back({{"pauli", s.vertices[i].str()}, {"mass", s.masses[i].mean}, {"stderr", s.masses[i].std_error}});
    j["masses"] = masses;
    out.csv_rows = masses;
    if (s.outliers) out.status = kExitChecksFailed;
  } else if (a.check == "quadratic-basis") {
    const GroupSpec g = make_group(a.group, a.n, false, "");
    const auto b = quadratic_symmetry_basis(require_generators(g), g.linear_symmetries);
    j["group"] = g.name();
    j["components"] = b.components.size();
    j["labels"] = b.labels.size();
    j["linear_symmetries"] = b.linear_symmetries.size();
    j["max_gram_error"] = b.max_gram_error;
    j["degenerate"] = b.degenerate_count();
  } else {
    throw ValidationError("unknown --check '" + a.check + "' (weingarten, second-moment, spread, quadratic-basis)");
  }
  out.records.push_back(j);
  return out;
}

// ---------------------------------------------------------------- discriminate

struct DiscriminateArgs {
  std::string experiment = "depth";
  std::string group = "matchgate";
  int n = 4;
  std::string perturbation;
  std::string region;
  std::optional<int> depth;
  std::optional<int> gates;
  bool full = false;
  std::string adjacency = "chain";
  std::size_t samples = 20000;
  std::uint64_t seed = 7;
  bool shot_mode = false;
};

ExperimentConfig to_config(const DiscriminateArgs& a) {
  ExperimentConfig c;
  c.experiment = parse_experiment_kind(a.experiment);
  c.group = parse_group_kind(a.group);
  c.n = a.n;
  if (!a.perturbation.empty()) c.perturbation = PauliString::parse(a.perturbation);
  if (!a.region.empty()) c.region = parse_qubit_set(a.region);
  c.depth = a.depth;
  c.gates = a.gates;
  c.full_generators = a.full || (c.experiment == ExperimentKind::gate_count && c.group == GroupKind::matchgate &&
                                 a.perturbation.empty() && !a.gates);
  c.adjacency = a.adjacency;
  c.samples = a.samples;
  c.seed = a.seed;
  c.shot_mode = a.shot_mode;
  return c;
}

Output run_discriminate(const DiscriminateArgs& a) {
  Output out;
  out.records.push_back(to_json(run_experiment(to_config(a))));
  return out;
}

// ---------------------------------------------------------------- fs-indicator

struct FsArgs {
  std::string group = "unitary";
  int n = 2;
  bool even_parity = false;
  bool exact = false;
  std::size_t samples = 20000;
  std::uint64_t seed = 7;
};

Output run_fs(const FsArgs& a) {
  Output out;
  Json j;
  j["schema"] = kSchemaVersion;
  const GroupSpec g = make_group(a.group, a.n, false, "");
  j["group"] = g.name();
  j["n"] = a.n;
  j["even_parity"] = a.even_parity;
  if (a.exact) {
    if (g.kind != GroupKind::clifford) throw ValidationError("--exact is only available for --group clifford");
    j["fs"] = frobenius_schur_clifford_exact(a.n);
    j["mode"] = "exact";
  } else {
    if (a.even_parity && g.kind != GroupKind::matchgate) throw ValidationError("--even-parity applies to matchgate only");
    const auto e = frobenius_schur(g, a.even_parity ? std::optional<Operator>(even_parity_projector(a.n)) : std::nullopt,
                                   a.samples, a.seed);
    j["fs"] = e.mean;
    j["fs_stderr"] = e.std_error;
    j["samples"] = e.samples;
    j["seed"] = a.seed;
    j["mode"] = "monte-carlo";
  }
  out.records.push_back(j);
  return out;
}

// ---------------------------------------------------------------- mixed-unitary

struct MixedArgs {
  std::string quantity = "commutant";
  std::string source = "haar";
  int n = 1;
  std::int64_t d = 4;
  std::string perturbation;
  std::string region;
  std::optional<int> depth;
  std::size_t samples = 20000;
  std::uint64_t seed = 7;
};

Output run_mixed(const MixedArgs& a) {
  Output out;
  if (a.quantity == "experiment") {
    DiscriminateArgs d;
    d.experiment = "mixed-unitary";
    d.group = "mixed-unitary";
    d.n = a.n;
    d.perturbation = a.perturbation;
    d.region = a.region;
    d.depth = a.depth;
    d.samples = a.samples;
    d.seed = a.seed;
    return run_discriminate(d);
  }
  Json j;
  j["schema"] = kSchemaVersion;
  j["quantity"] = a.quantity;
  if (a.quantity == "commutant") {
    MomentEstimate e;
    if (a.source == "haar") {
      e = mixed_unitary_commutant_dimension(HaarUnitarySource{a.d, a.samples, a.seed});
      j["d"] = a.d;
    } else if (a.source == "clifford") {
      e = mixed_unitary_commutant_dimension(CliffordEnumeration{a.n});
      j["n"] = a.n;
    } else if (a.source == "pauli") {
      e = mixed_unitary_commutant_dimension(PauliEnumeration{a.n});
      j["n"] = a.n;
    } else {
      throw ValidationError("unknown --source '" + a.source + "' (haar, clifford, pauli)");
    }
    j["source"] = a.source;
    j["dimension"] = e.mean;
    j["dimension_stderr"] = e.std_error;
    j["samples"] = e.samples;
  } else if (a.quantity == "fs") {
    const auto e = mixed_unitary_fs(a.d, a.samples, a.seed);
    j["d"] = a.d;
    j["fs"] = e.mean;
    j["fs_stderr"] = e.std_error;
    j["samples"] = e.samples;
    j["seed"] = a.seed;
  } else {
    throw ValidationError("unknown --quantity '" + a.quantity + "' (commutant, fs, experiment)");
  }
  out.records.push_back(j);
  return out;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
  std::string target;
  std::size_t samples = 0;
  std::uint64_t seed = 7;
  bool list = false;
};

Output run_reproduce(const ReproduceArgs& a) {
  Output out;
  if (a.list) {
    for (const auto& t : reproduce_targets())
      out.records.push_back({{"target", t.name}, {"alias", t.alias}, {"description", t.description}});
    return out;
  }
  if (a.target.empty()) throw ValidationError("reproduce needs a target (or --list)");
  std::vector<std::string> ids;
  if (a.target == "all")
    for (const auto& t : reproduce_targets()) ids.push_back(t.name);
  else
    ids.push_back(a.target);
  Json rows = Json::array();
  for (const auto& id : ids) {
    const auto r = reproduce(id, a.seed, a.samples);
    const Json j = to_json(r);
    out.records.push_back(j);
    for (const auto& c : j["checks"]) {
      Json row = c;
      row["target"] = r.target;
      rows.push_back(row);
    }
    if (!r.pass()) out.status = kExitChecksFailed;
  }
  out.csv_rows = rows;
  return out;
}

// ---------------------------------------------------------------- output

std::string render(const Output& o, const std::string& format) {
  if (format == "csv") {
    if (o.csv_rows) return to_csv(*o.csv_rows);
    Json arr = Json::array();
    for (const auto& r : o.records) arr.push_back(r);
    return to_csv(arr);
  }
  std::string s;
  for (const auto& r : o.records) s += dump_json(r) + "\n";
  return s;
}

Json option_echo(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string key = opt->get_single_name();
    if (key.empty() || key == "help") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      std::string v;
      for (std::size_t i = 0; i < res.size(); ++i) v += (i ? "," : "") + res[i];
      params[key] = opt->get_type_size() == 0 && v.empty() ? "true" : v;
    } else {
      params[key] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> args(argv, argv + argc);
  try {
    args = apply_config(args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  CLI::App app{"gdesign: commutator graphs, group samplers, moment checks and design lower bounds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  std::string format = "json", out_path, config_path, manifest_path;
  unsigned threads = 0;
  app.add_option("--format", format, "json (one record per line) or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write output to a file instead of stdout");
  app.add_option("--threads", threads, "worker cap; 0 = hardware concurrency");
  app.add_option("--config", config_path, "JSON file whose keys mirror the flags; flags win");
  app.add_option("--manifest", manifest_path, "write a run manifest (parameters, seed, version, wall time)");
  app.set_version_flag("--version", GDESIGN_VERSION);

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "commutator-graph components, balls, diameters and ratios");
  graph->add_option("--group", ga.group, "matchgate, orthogonal, symplectic, unitary, clifford or custom");
  graph->add_option("--n", ga.n, "qubits")->required();
  graph->add_flag("--full", ga.full, "matchgate: all c_a c_b generators");
  graph->add_option("--generators", ga.generators, "custom: comma-separated Pauli strings");
  graph->add_flag("--census", ga.census, "all components of the 4^n-vertex graph");
  graph->add_option("--pauli", ga.pauli, "summarize the component of this Pauli");
  graph->add_option("--ball", ga.ball, "size of the radius-N ball");
  graph->add_flag("--profile", ga.profile, "ball sizes for every radius");
  graph->add_flag("--diameter", ga.diameter, "component diameter");
  graph->add_option("--region", ga.region, "r = fraction of the component supported in these qubits");
  graph->add_option("--max-qubits", ga.max_qubits, "graph budget");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "closed-form lower bounds and counting formulas");
  bounds->add_option("--formula", ba.formula, "formula id")->required();
  bounds->add_option("--n", ba.n, "qubits");
  bounds->add_option("--d", ba.d, "dimension");
  bounds->add_option("--dL", ba.dl, "region dimension");
  bounds->add_option("--p-shallow", ba.p_shallow, "rational, e.g. 1 or 5/14");
  bounds->add_option("--p-haar", ba.p_haar, "rational");
  bounds->add_option("--r", ba.r, "component ratio, rational");
  bounds->add_option("--ball", ba.ball, "ball size");
  bounds->add_option("--component", ba.component, "component size");
  bounds->add_option("--S", ba.s_size, "generator count");
  bounds->add_option("--N", ba.gates, "gate count / radius");
  bounds->add_option("--c", ba.c, "gate-count scaling constant");
  bounds->add_option("--kind", ba.kind, "orthogonal or symplectic");
  bounds->add_option("--sweep", ba.sweep, "lo:hi[:step] over n");

  MomentsArgs ma;
  auto* moments = app.add_subcommand("moments", "second-moment checks");
  moments->add_option("--check", ma.check, "weingarten, second-moment, spread, quadratic-basis");
  moments->add_option("--kind", ma.kind, "orthogonal or symplectic (weingarten)");
  moments->add_option("--group", ma.group, "group");
  moments->add_option("--n", ma.n, "qubits");
  moments->add_option("--perturbation", ma.perturbation, "Pauli V");
  moments->add_option("--region", ma.region, "qubit set");
  moments->add_option("--pauli", ma.pauli, "Pauli P (spread)");
  moments->add_option("--samples", ma.samples, "Monte Carlo samples");
  moments->add_option("--seed", ma.seed, "seed");

  DiscriminateArgs da;
  auto* disc = app.add_subcommand("discriminate", "channel-discrimination experiments");
  disc->add_option("--experiment", da.experiment, "depth, mixed-unitary or gate-count");
  disc->add_option("--group", da.group, "group");
  disc->add_option("--n", da.n, "qubits");
  disc->add_option("--perturbation", da.perturbation, "Pauli V (or P for gate-count)");
  disc->add_option("--region", da.region, "qubit set, e.g. 0,1,2");
  disc->add_option("--depth", da.depth, "brickwork layers");
  disc->add_option("--gates", da.gates, "N for gate-count");
  disc->add_flag("--full-generators", da.full, "matchgate: all c_a c_b generators");
  disc->add_option("--adjacency", da.adjacency, "chain, 'grid RxC' or 'a-b,c-d'");
  disc->add_option("--samples", da.samples, "samples per side");
  disc->add_option("--seed", da.seed, "seed");
  disc->add_flag("--shot-mode", da.shot_mode, "one Born-rule outcome per sample");

  FsArgs fa;
  auto* fs = app.add_subcommand("fs-indicator", "Frobenius-Schur indicator E Tr[U^2]");
  fs->add_option("--group", fa.group, "group");
  fs->add_option("--n", fa.n, "qubits");
  fs->add_flag("--even-parity", fa.even_parity, "matchgate: restrict to the even spinor");
  fs->add_flag("--exact", fa.exact, "clifford: exact enumeration");
  fs->add_option("--samples", fa.samples, "samples");
  fs->add_option("--seed", fa.seed, "seed");

  MixedArgs xa;
  auto* mixed = app.add_subcommand("mixed-unitary", "mixed-unitary commutant, FS value and k=1 experiment");
  mixed->add_option("--quantity", xa.quantity, "commutant, fs or experiment");
  mixed->add_option("--source", xa.source, "haar, clifford or pauli (commutant)");
  mixed->add_option("--n", xa.n, "qubits (enumerations and experiment)");
  mixed->add_option("--d", xa.d, "dimension (Haar)");
  mixed->add_option("--perturbation", xa.perturbation, "Pauli V (experiment)");
  mixed->add_option("--region", xa.region, "qubit set (experiment)");
  mixed->add_option("--depth", xa.depth, "brickwork layers (experiment)");
  mixed->add_option("--samples", xa.samples, "samples");
  mixed->add_option("--seed", xa.seed, "seed");

  ReproduceArgs ra;
  auto* repro = app.add_subcommand("reproduce", "preconfigured verification suites");
  repro->add_option("target", ra.target, "target name, alias or 'all'");
  repro->add_option("--samples", ra.samples, "override the per-target sample count");
  repro->add_option("--seed", ra.seed, "seed");
  repro->add_flag("--list", ra.list, "list targets");

  std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    set_max_threads(threads);
    Output out;
    CLI::App* used = nullptr;
    if (graph->parsed()) {
      out = run_graph(ga);
      used = graph;
    } else if (bounds->parsed()) {
      out = run_bounds(ba);
      used = bounds;
    } else if (moments->parsed()) {
      out = run_moments(ma);
      used = moments;
    } else if (disc->parsed()) {
      out = run_discriminate(da);
      used = disc;
    } else if (fs->parsed()) {
      out = run_fs(fa);
      used = fs;
    } else if (mixed->parsed()) {
      out = run_mixed(xa);
      used = mixed;
    } else {
      out = run_reproduce(ra);
      used = repro;
    }
    const std::string text = render(out, format);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw ValidationError("cannot write --out '" + out_path + "'");
      f << text;
    }
    if (!manifest_path.empty()) {
      Json m;
      m["schema"] = kSchemaVersion;
      m["subcommand"] = used->get_name();
      m["params"] = option_echo(used);
      m["seed"] = m["params"].contains("seed") ? m["params"]["seed"] : Json(nullptr);
      m["format"] = format;
      m["threads"] = threads;
      m["tool_version"] = GDESIGN_VERSION;
      m["rng"] = "xoshiro256** seeded by splitmix64; per-sample streams Rng::stream(seed, index)";
      m["output"] = out_path.empty() ? "stdout" : out_path;
      m["wall_time_seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::ofstream f(manifest_path, std::ios::binary);
      if (!f) throw ValidationError("cannot write --manifest '" + manifest_path + "'");
      f << dump_json(m) << "\n";
    }
    return out.status;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
