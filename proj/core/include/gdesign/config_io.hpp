#pragma once

#include <string>

#include "gdesign/bounds.hpp"
#include "gdesign/experiments.hpp"
#include "gdesign/json_writer.hpp"
#include "gdesign/stats.hpp"

namespace gdesign {

/// Accepts "0,2,3", "{0,2,3}" or "0-3" (inclusive range).
QubitSet parse_qubit_set(const std::string& text);

Json to_json(const MomentEstimate& e);
Json to_json(const BoundReport& b);
Json to_json(const ExperimentConfig& c);
/// Flat record: experiment, group, n, params, p_shallow, p_shallow_stderr,
/// p_haar, p_haar_stderr, mc_bound, analytic_bound, analytic_ref, seed, ...
Json to_json(const ExperimentResult& r);

/// Keys mirror the `discriminate` flags; unknown keys are rejected.
ExperimentConfig experiment_config_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace gdesign
