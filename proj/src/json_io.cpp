#include "rrlab/json_io.hpp"

#include "rrlab/error.hpp"

namespace rrlab {

using nlohmann::json;

json rat_to_json(const Rat& r) { return to_string(r); }

Rat rat_from_json(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.dump());
  fail("FormatError", "expected a rational string, got " + j.dump());
}

json vec_to_json(std::span<const Rat> v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rat_to_json(r));
  return out;
}

RatVec vec_from_json(const json& j) {
  if (!j.is_array()) fail("FormatError", "expected an array of rationals");
  RatVec out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}

json matrix_to_json(const RatMatrix& m) { return vec_to_json(m.data()); }

RatMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  RatVec flat = vec_from_json(j);
  if (flat.size() != rows * cols) {
    fail("FormatError", "matrix has " + std::to_string(flat.size()) + " entries, expected " +
                            std::to_string(rows * cols));
  }
  return RatMatrix(rows, cols, std::move(flat));
}

json alphabet_to_json(const Alphabet& a) {
  json out = json::array();
  for (char c : a) out.push_back(symbol_string(c));
  return out;
}

Alphabet alphabet_from_json(const json& j) {
  if (!j.is_array()) fail("FormatError", "alphabet must be an array of one-character strings");
  Alphabet out;
  for (const auto& e : j) {
    if (!e.is_string() || e.get<std::string>().size() != 1) {
      fail("FormatError", "alphabet symbols must be one-character strings");
    }
    out.push_back(e.get<std::string>()[0]);
  }
  SymbolIndex check(out);
  return out;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    fail("FormatError", std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace rrlab
