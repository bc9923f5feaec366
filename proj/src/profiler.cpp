#include "rrlab/profiler.hpp"

#include <unordered_set>

#include "rrlab/error.hpp"

namespace rrlab {

std::string to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::Constant:
      return "constant";
    case GrowthClass::Polynomial:
      return "polynomial";
    case GrowthClass::Exponential:
      return "exponential";
  }
  return "?";
}

namespace {

std::string config_key(const StateVec& v) {
  std::string key;
  for (const auto& r : v) {
    key += r.get_str();
    key += ',';
  }
  return key;
}

}  // namespace

GrowthProfile count_configs(const Encoder& enc, std::size_t max_len, std::size_t max_strings) {
  const std::size_t sigma = enc.alphabet().size();
  std::size_t total = 1;
  std::size_t layer = 1;
  for (std::size_t n = 1; n <= max_len; ++n) {
    if (sigma != 0 && layer > max_strings / sigma) total = max_strings + 1;
    layer *= sigma;
    total += layer;
    if (total > max_strings) {
      fail("EnumerationCap", "enumerating strings up to length " + std::to_string(max_len) +
                                 " exceeds " + std::to_string(max_strings));
    }
  }

  std::vector<std::unordered_set<std::string>> by_length(max_len + 1);
  walk_strings(
      enc.alphabet(), max_len, enc.initial(),
      [&](const StateVec& s, char c) { return enc.step(s, c); },
      [&](std::string_view x, const StateVec& s) {
        by_length[x.size()].insert(config_key(enc.configuration(s)));
      });

  GrowthProfile p;
  p.encoder = enc.name();
  std::unordered_set<std::string> seen(by_length[0]);
  for (std::size_t n = 1; n <= max_len; ++n) {
    seen.insert(by_length[n].begin(), by_length[n].end());
    p.lengths.push_back(n);
    p.counts.push_back(seen.size());
    p.exact_counts.push_back(by_length[n].size());
  }
  return p;
}

GrowthClass classify_growth(const std::vector<std::size_t>& c) {
  if (c.size() < 6) {
    fail("InsufficientData", "growth classification needs at least 6 lengths, got " +
                                 std::to_string(c.size()));
  }
  const std::size_t n = c.size();
  if (c[n - 1] == c[n - 2] && c[n - 2] == c[n - 3] && c[n - 3] == c[n - 4]) {
    return GrowthClass::Constant;
  }
  bool exponential = true;
  for (std::size_t i = n - 4; i < n; ++i) {
    // c[i] / c[i-1] >= 3/2
    if (2 * c[i] < 3 * c[i - 1]) exponential = false;
  }
  return exponential ? GrowthClass::Exponential : GrowthClass::Polynomial;
}

GrowthClass classify_growth(const GrowthProfile& p) { return classify_growth(p.counts); }

nlohmann::json to_json(const GrowthProfile& p, GrowthClass g) {
  return nlohmann::json{{"encoder", p.encoder},
                        {"lengths", p.lengths},
                        {"counts", p.counts},
                        {"exact_counts", p.exact_counts},
                        {"class", to_string(g)}};
}

}  // namespace rrlab
