#pragma once

#include <string>

#include <json.hpp>

namespace d4walk::cli {

using Json = nlohmann::ordered_json;

// Serializes with every float printed to 17 significant digits in the C
// locale, so identical inputs give byte-identical documents.
std::string emit_json(const Json& doc, int indent = 2);

// "%.17g" without locale dependence.
std::string format_real(double v);

}  // namespace d4walk::cli
