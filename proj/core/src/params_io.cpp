#include "d4walk/params_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace d4walk {

namespace {

std::vector<std::int64_t> read_int_array(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  }
  const auto& arr = doc.at(key);
  if (!arr.is_array()) {
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be an array");
  }
  std::vector<std::int64_t> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) {
      throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" entries must be integers");
    }
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

}  // namespace

TreeParams parse_params_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "document must be an object");
  TreeParams p{read_int_array(doc, "q"), read_int_array(doc, "a")};
  if (p.q.size() != p.a.size()) {
    throw Error(ErrorCode::ParseError, "\"q\" and \"a\" must have equal length");
  }
  return p;
}

TreeParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_params_json(buf.str());
}

std::string params_to_json(const TreeParams& p) {
  nlohmann::ordered_json doc;
  doc["q"] = p.q;
  doc["a"] = p.a;
  return doc.dump();
}

}  // namespace d4walk
