#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rrlab {

enum class Language {
  Anbn,          // a^n b^n, n >= 0
  AnbnSigma,     // a^n b^n Σ*, n > 0
  AnbnSigmaEps,  // a^n b^n Σ* ∪ {ε}
  LLeq,          // #a - #b <= 0
  L5,            // |#a - #b| < 5
  SigmaAnbn,     // Σ* a^n b^n, n > 0
};

std::string to_string(Language l);
/// Accepts anbn, anbn_sigma, anbn_sigma_eps, L_leq, L5, sigma_anbn.
Language parse_language(std::string_view name);
const std::vector<Language>& all_languages();

/// Exact membership over {a, b}; other symbols throw Error("UnknownSymbol").
bool member(Language l, std::string_view x);

/// labels[t] = member(x_1..x_{t+1}), computed in one left-to-right pass.
std::vector<int> prefix_labels(Language l, std::string_view x);

/// One string with per-prefix labels; the record the trainer consumes.
struct LabeledString {
  std::string tokens;
  std::vector<int> labels;
  std::string split;
  std::string language;
  std::uint64_t seed = 0;

  friend bool operator==(const LabeledString&, const LabeledString&) = default;
};

/// Split tags and their stream ids for seed derivation.
std::uint64_t split_stream(std::string_view split);

/// String i of a batch is drawn from Rng(derive_seed(seed, split_stream(split), i)).
std::vector<LabeledString> sample_uniform(Language l, std::size_t len, std::size_t count,
                                          std::uint64_t seed, std::string_view split = "train");

/// Even indices draw n uniformly from [0, max_n] (clipped to len / 2), fix
/// a^n b^n as the prefix and fill the rest uniformly; odd indices are fully
/// uniform. So ceil(count / 2) strings carry a forced prefix.
std::vector<LabeledString> sample_positive_biased(Language l, std::size_t len,
                                                  std::size_t count, std::uint64_t seed,
                                                  std::string_view split = "train",
                                                  std::size_t max_n = 32);

/// The n used for index i of sample_positive_biased (0 for odd indices).
std::size_t forced_prefix_length(std::size_t len, std::uint64_t seed, std::string_view split,
                                 std::size_t index, std::size_t max_n = 32);

nlohmann::json to_json(const LabeledString& s);
/// Validates field types, tokens over {a, b} and labels.size() == tokens.size().
LabeledString labeled_from_json(const nlohmann::json& j);

/// (a^j b^j a^j b^j a^j b^j, a^j b^{j-1} a^j b^{j+1} a^j b^j) with j = window + 10.
std::pair<std::string, std::string> suffix_attack_pair(std::size_t window);

}  // namespace rrlab
