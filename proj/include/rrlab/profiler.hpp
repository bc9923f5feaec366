#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrlab/encoder.hpp"

namespace rrlab {

enum class GrowthClass { Constant, Polynomial, Exponential };

std::string to_string(GrowthClass g);

/// counts[i] = distinct configurations over all strings of length <= lengths[i];
/// exact_counts[i] the same over strings of length exactly lengths[i].
struct GrowthProfile {
  std::string encoder;
  std::vector<std::size_t> lengths;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> exact_counts;
};

/// Exhaustive depth-first enumeration of Σ^{<=max_len} (lengths 1..max_len),
/// hashing enc.configuration(state). Throws Error("EnumerationCap") if more
/// than max_strings strings would be visited.
GrowthProfile count_configs(const Encoder& enc, std::size_t max_len,
                            std::size_t max_strings = std::size_t{1} << 24);

/// Constant if the last 4 counts are equal; exponential if the last 4
/// successive ratios are all >= 3/2; polynomial otherwise. Needs at least 6
/// points, else Error("InsufficientData").
GrowthClass classify_growth(const GrowthProfile& p);
GrowthClass classify_growth(const std::vector<std::size_t>& counts);

nlohmann::json to_json(const GrowthProfile& p, GrowthClass g);

}  // namespace rrlab
