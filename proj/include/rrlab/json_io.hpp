#pragma once

#include <json.hpp>

#include "rrlab/matrix.hpp"
#include "rrlab/rational.hpp"
#include "rrlab/strings.hpp"

namespace rrlab {

nlohmann::json rat_to_json(const Rat& r);
/// Accepts "p/q" strings and JSON integers.
Rat rat_from_json(const nlohmann::json& j);

nlohmann::json vec_to_json(std::span<const Rat> v);
RatVec vec_from_json(const nlohmann::json& j);

/// Row-major flat list of rational strings.
nlohmann::json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols);

nlohmann::json alphabet_to_json(const Alphabet& a);
Alphabet alphabet_from_json(const nlohmann::json& j);

/// Fetches a required member, throwing Error("FormatError") when missing.
const nlohmann::json& require(const nlohmann::json& j, const char* key);

}  // namespace rrlab
