#pragma once

#include <json.hpp>

#include <string>

namespace vwstat {

/// Serializes with every floating-point number printed to 17 significant
/// digits; non-finite numbers become null.
std::string to_json_text(const nlohmann::ordered_json& doc, int indent = 2);

}  // namespace vwstat
