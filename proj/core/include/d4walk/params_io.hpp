#pragma once

#include <string>
#include <string_view>

#include "d4walk/tree_model.hpp"

namespace d4walk {

// Reads a {"q": [...], "a": [...]} document. Throws Error(ParseError) for
// malformed JSON or a wrong schema; tree invariants are checked separately by
// validate_params.
TreeParams parse_params_json(std::string_view text);
TreeParams load_params_file(const std::string& path);

// Canonical compact form, e.g. {"q":[0,2],"a":[9,8]}.
std::string params_to_json(const TreeParams& p);

}  // namespace d4walk
