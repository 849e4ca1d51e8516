#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gdesign/json_writer.hpp"

namespace gdesign {

struct ReproduceCheck {
  std::string name;
  std::string predicted;
  double predicted_value = 0.0;
  double measured = 0.0;
  double std_error = 0.0;
  /// "exact" (1e-12) or "5 stderr".
  std::string tolerance;
  bool pass = false;
};

struct ReproduceReport {
  std::string target;
  std::string description;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<ReproduceCheck> checks;
  bool pass() const;
};

struct ReproduceTarget {
  std::string name;
  std::string alias;
  std::string description;
};

const std::vector<ReproduceTarget>& reproduce_targets();
/// Resolves a name or alias; throws ValidationError for unknown ids.
const ReproduceTarget& find_reproduce_target(std::string_view id);

/// samples = 0 picks the per-target default.
ReproduceReport reproduce(std::string_view id, std::uint64_t seed, std::size_t samples = 0);

Json to_json(const ReproduceReport& r);

}  // namespace gdesign
