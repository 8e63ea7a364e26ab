#pragma once

#include <string>

#include <json.hpp>

namespace pathweave {

// Minimal TOML reader covering the config-file subset: [table] and
// [dotted.table] headers, key = value pairs with strings, booleans, integers,
// floats and single-line arrays, and # comments. The result is a JSON object,
// so config parsing has a single downstream representation.
nlohmann::json parse_toml(const std::string& text);

}  // namespace pathweave
