#include "gdesign/config_io.hpp"

#include <fstream>
#include <set>

#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

Json optional_rational(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return to_string(*r);
}

Json optional_value(const std::optional<Rational>& r) {
  if (!r) return nullptr;
  return to_double(*r);
}

template <class T>
T get_as(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

QubitSet parse_qubit_set(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '{' && c != '}' && c != ' ') s += c;
  QubitSet q;
  if (s.empty()) return q;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string item = s.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      if (const auto dash = item.find('-'); dash != std::string::npos && dash > 0) {
        const int a = std::stoi(item.substr(0, dash), &used);
        if (used != dash) throw std::invalid_argument(item);
        const int b = std::stoi(item.substr(dash + 1), &used);
        if (used != item.size() - dash - 1 || b < a) throw std::invalid_argument(item);
        for (int i = a; i <= b; ++i) q.insert(i);
      } else {
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        q.insert(v);
      }
    } catch (const std::logic_error&) {
      throw ValidationError("invalid qubit set '" + text + "'");
    }
    pos = comma + 1;
  }
  return q;
}

Json to_json(const MomentEstimate& e) {
  Json j;
  j["mean"] = e.mean;
  j["stderr"] = e.std_error;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  return j;
}

Json to_json(const BoundReport& b) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["formula"] = b.formula;
  Json in = Json::object();
  for (const auto& [k, v] : b.inputs) in[k] = v;
  j["inputs"] = in;
  j["exact"] = optional_rational(b.exact);
  j["value"] = b.value;
  j["reference"] = b.reference;
  return j;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = to_string(c.experiment);
  j["group"] = to_string(c.group);
  j["n"] = c.n;
  j["perturbation"] = c.perturbation ? Json(c.perturbation->str()) : Json(nullptr);
  j["region"] = c.region ? Json(c.region->to_vector()) : Json(nullptr);
  j["depth"] = c.depth ? Json(*c.depth) : Json(nullptr);
  j["gates"] = c.gates ? Json(*c.gates) : Json(nullptr);
  j["full_generators"] = c.full_generators;
  j["adjacency"] = c.adjacency;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["shot_mode"] = c.shot_mode;
  return j;
}

Json to_json(const ExperimentResult& r) {
  const auto& c = r.config;
  Json j;
  j["schema"] = kSchemaVersion;
  j["experiment"] = to_string(c.experiment);
  j["group"] = to_string(c.group);
  j["n"] = c.n;
  Json params = to_json(c);
  for (const char* k : {"experiment", "group", "n", "seed"}) params.erase(k);
  params["form"] = r.form;
  j["params"] = params;
  j["p_shallow"] = r.p_shallow.mean;
  j["p_shallow_stderr"] = r.p_shallow.std_error;
  j["p_haar"] = r.p_haar.mean;
  j["p_haar_stderr"] = r.p_haar.std_error;
  j["mc_bound"] = r.mc_bound;
  j["mc_bound_stderr"] = r.mc_bound_std_error;
  j["analytic_p_haar"] = optional_rational(r.analytic_p_haar);
  j["analytic_bound"] = optional_value(r.analytic_bound);
  j["analytic_bound_exact"] = optional_rational(r.analytic_bound);
  j["analytic_ref"] = r.analytic_ref;
  j["min_shallow_probability"] = r.min_shallow_probability;
  j["lightcone_violations"] = r.lightcone_violations;
  j["exactness_failures"] = r.exactness_failures;
  if (c.experiment == ExperimentKind::gate_count) {
    j["ball_size"] = r.ball_size;
    j["component_size"] = r.component_size;
  }
  j["seed"] = c.seed;
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("experiment config must be a JSON object");
  static const std::set<std::string> known{"experiment", "group",     "n",         "perturbation",
                                           "region",     "depth",     "gates",     "full_generators",
                                           "adjacency",  "samples",   "seed",      "shot_mode"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ValidationError("unknown config key '" + it.key() + "'");
  ExperimentConfig c;
  const auto has = [&](const char* k) { return j.contains(k) && !j.at(k).is_null(); };
  if (has("experiment")) c.experiment = parse_experiment_kind(get_as<std::string>(j, "experiment"));
  if (has("group")) c.group = parse_group_kind(get_as<std::string>(j, "group"));
  if (has("n")) c.n = get_as<int>(j, "n");
  if (has("perturbation")) c.perturbation = PauliString::parse(get_as<std::string>(j, "perturbation"));
  if (has("region")) {
    const Json& r = j.at("region");
    if (r.is_string()) {
      c.region = parse_qubit_set(r.get<std::string>());
    } else {
      QubitSet q;
      for (int v : get_as<std::vector<int>>(j, "region")) q.insert(v);
      c.region = q;
    }
  }
  if (has("depth")) c.depth = get_as<int>(j, "depth");
  if (has("gates")) c.gates = get_as<int>(j, "gates");
  if (has("full_generators")) c.full_generators = get_as<bool>(j, "full_generators");
  if (has("adjacency")) c.adjacency = get_as<std::string>(j, "adjacency");
  if (has("samples")) c.samples = get_as<std::size_t>(j, "samples");
  if (has("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (has("shot_mode")) c.shot_mode = get_as<bool>(j, "shot_mode");
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace gdesign
