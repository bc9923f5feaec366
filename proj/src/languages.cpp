#include "rrlab/languages.hpp"

#include <cstdlib>

#include "rrlab/error.hpp"
#include "rrlab/rng.hpp"

namespace rrlab {

using nlohmann::json;

std::string to_string(Language l) {
  switch (l) {
    case Language::Anbn:
      return "anbn";
    case Language::AnbnSigma:
      return "anbn_sigma";
    case Language::AnbnSigmaEps:
      return "anbn_sigma_eps";
    case Language::LLeq:
      return "L_leq";
    case Language::L5:
      return "L5";
    case Language::SigmaAnbn:
      return "sigma_anbn";
  }
  return "?";
}

Language parse_language(std::string_view name) {
  for (Language l : all_languages()) {
    if (to_string(l) == name) return l;
  }
  fail("UnknownLanguage", "unknown language '" + std::string(name) + "'");
}

const std::vector<Language>& all_languages() {
  static const std::vector<Language> all = {Language::Anbn, Language::AnbnSigma,
                                            Language::AnbnSigmaEps, Language::LLeq,
                                            Language::L5, Language::SigmaAnbn};
  return all;
}

namespace {

// Incremental recognizer shared by member() and prefix_labels().
class Scanner {
 public:
  explicit Scanner(Language l) : lang_(l) {}

  void push(char c) {
    if (c != 'a' && c != 'b') {
      fail("UnknownSymbol", "symbol '" + std::string(1, c) + "' is not in {a, b}");
    }
    if (c == 'a') {
      ++diff_;
      if (last_ == 'b') ba_seen_ = true;
      if (!ba_seen_) ++lead_a_;
    } else {
      --diff_;
      if (!ba_seen_) ++lead_b_;
    }
    if (c == last_) {
      ++run_;
    } else {
      prev_run_ = run_;
      run_ = 1;
    }
    last_ = c;
    ++len_;
    if (!ba_seen_ && lead_a_ > 0 && lead_a_ == lead_b_) latched_ = true;
  }

  bool accepts() const {
    switch (lang_) {
      case Language::Anbn:
        return !ba_seen_ && lead_a_ == lead_b_;
      case Language::AnbnSigma:
        return latched_;
      case Language::AnbnSigmaEps:
        return len_ == 0 || latched_;
      case Language::LLeq:
        return diff_ <= 0;
      case Language::L5:
        return std::llabs(diff_) < 5;
      case Language::SigmaAnbn:
        // Trailing b-run of length m preceded by an a-run of length >= m.
        return last_ == 'b' && prev_run_ >= run_ && len_ > run_;
    }
    return false;
  }

 private:
  Language lang_;
  long long diff_ = 0;
  std::size_t lead_a_ = 0, lead_b_ = 0, len_ = 0;
  std::size_t run_ = 0, prev_run_ = 0;
  char last_ = 0;
  bool ba_seen_ = false;
  bool latched_ = false;
};

}  // namespace

bool member(Language l, std::string_view x) {
  Scanner s(l);
  for (char c : x) s.push(c);
  return s.accepts();
}

std::vector<int> prefix_labels(Language l, std::string_view x) {
  Scanner s(l);
  std::vector<int> labels;
  labels.reserve(x.size());
  for (char c : x) {
    s.push(c);
    labels.push_back(s.accepts() ? 1 : 0);
  }
  return labels;
}

std::uint64_t split_stream(std::string_view split) {
  if (split == "train") return 1;
  if (split == "val") return 2;
  if (split == "test") return 3;
  fail("InvalidArgument", "split must be train, val or test");
}

namespace {

LabeledString make_record(Language l, std::string tokens, std::string_view split,
                          std::uint64_t seed) {
  LabeledString s;
  s.labels = prefix_labels(l, tokens);
  s.tokens = std::move(tokens);
  s.split = std::string(split);
  s.language = to_string(l);
  s.seed = seed;
  return s;
}

void fill_uniform(Rng& rng, std::string& out, std::size_t len) {
  while (out.size() < len) out.push_back(rng.coin() ? 'b' : 'a');
}

}  // namespace

std::vector<LabeledString> sample_uniform(Language l, std::size_t len, std::size_t count,
                                          std::uint64_t seed, std::string_view split) {
  const std::uint64_t stream = split_stream(split);
  std::vector<LabeledString> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, stream, i));
    std::string tokens;
    fill_uniform(rng, tokens, len);
    out.push_back(make_record(l, std::move(tokens), split, seed));
  }
  return out;
}

std::size_t forced_prefix_length(std::size_t len, std::uint64_t seed, std::string_view split,
                                 std::size_t index, std::size_t max_n) {
  if (index % 2 != 0) return 0;
  Rng rng(derive_seed(seed, split_stream(split), index));
  const auto n = static_cast<std::size_t>(rng.below(max_n + 1));
  return std::min(n, len / 2);
}

std::vector<LabeledString> sample_positive_biased(Language l, std::size_t len,
                                                  std::size_t count, std::uint64_t seed,
                                                  std::string_view split, std::size_t max_n) {
  const std::uint64_t stream = split_stream(split);
  std::vector<LabeledString> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, stream, i));
    std::string tokens;
    if (i % 2 == 0) {
      const auto n = std::min(static_cast<std::size_t>(rng.below(max_n + 1)), len / 2);
      tokens.append(n, 'a');
      tokens.append(n, 'b');
    }
    fill_uniform(rng, tokens, len);
    out.push_back(make_record(l, std::move(tokens), split, seed));
  }
  return out;
}

json to_json(const LabeledString& s) {
  return json{{"tokens", s.tokens},
              {"labels", s.labels},
              {"split", s.split},
              {"language", s.language},
              {"seed", s.seed}};
}

LabeledString labeled_from_json(const json& j) {
  if (!j.is_object()) fail("FormatError", "record must be a JSON object");
  for (const char* key : {"tokens", "labels", "split", "language", "seed"}) {
    if (!j.contains(key)) fail("FormatError", std::string("record lacks '") + key + "'");
  }
  if (!j["tokens"].is_string() || !j["labels"].is_array() || !j["split"].is_string() ||
      !j["language"].is_string() || !j["seed"].is_number_unsigned()) {
    fail("FormatError", "record field has the wrong type");
  }
  LabeledString s;
  s.tokens = j["tokens"].get<std::string>();
  for (char c : s.tokens) {
    if (c != 'a' && c != 'b') fail("FormatError", "tokens must be over {a, b}");
  }
  for (const auto& v : j["labels"]) {
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      fail("FormatError", "labels must be 0 or 1");
    }
    s.labels.push_back(v.get<int>());
  }
  if (s.labels.size() != s.tokens.size()) {
    fail("FormatError", "labels and tokens differ in length");
  }
  s.split = j["split"].get<std::string>();
  split_stream(s.split);
  s.language = j["language"].get<std::string>();
  parse_language(s.language);
  s.seed = j["seed"].get<std::uint64_t>();
  return s;
}

std::pair<std::string, std::string> suffix_attack_pair(std::size_t window) {
  if (window == 0) fail("InvalidArgument", "window must be >= 1");
  const std::size_t j = window + 10;
  const std::string a(j, 'a'), b(j, 'b');
  std::string w1 = a + b + a + b + a + b;
  std::string w2 = a + std::string(j - 1, 'b') + a + std::string(j + 1, 'b') + a + b;
  return {std::move(w1), std::move(w2)};
}

}  // namespace rrlab
