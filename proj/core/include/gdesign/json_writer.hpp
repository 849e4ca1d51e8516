#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gdesign {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "v1";

/// %.17g, with "nan"/"inf" mapped to null.
std::string format_double(double v);

/// Compact single-line JSON; every float is written with 17 significant digits.
std::string dump_json(const Json& j);

/// Nested objects flatten to dotted keys; arrays of scalars join with ';'.
/// An array of objects becomes one row per element.
std::string to_csv(const Json& j);

}  // namespace gdesign
