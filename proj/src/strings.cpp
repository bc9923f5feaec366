#include "rrlab/strings.hpp"

#include <algorithm>

#include "rrlab/error.hpp"

namespace rrlab {

SymbolIndex::SymbolIndex(const Alphabet& alphabet) {
  slots_.fill(-1);
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    auto& slot = slots_[static_cast<unsigned char>(alphabet[i])];
    if (slot != -1) fail("InvalidAlphabet", "duplicate symbol '" + symbol_string(alphabet[i]) + "'");
    slot = static_cast<std::int16_t>(i);
  }
}

std::size_t SymbolIndex::at(char c) const {
  int i = find(c);
  if (i < 0) fail("UnknownSymbol", "symbol '" + symbol_string(c) + "' is not in the alphabet");
  return static_cast<std::size_t>(i);
}

std::vector<std::string> strings_of_length(const Alphabet& alphabet, std::size_t n) {
  std::vector<std::string> out{std::string()};
  for (std::size_t len = 0; len < n; ++len) {
    std::vector<std::string> next;
    next.reserve(out.size() * alphabet.size());
    for (const auto& s : out)
      for (char c : alphabet) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

std::vector<std::string> strings_up_to(const Alphabet& alphabet, std::size_t max_len) {
  std::vector<std::string> out;
  for (std::size_t n = 0; n <= max_len; ++n) {
    auto level = strings_of_length(alphabet, n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t count_symbol(std::string_view x, char c) {
  return static_cast<std::size_t>(std::count(x.begin(), x.end(), c));
}

std::string symbol_string(char c) { return std::string(1, c); }

std::string alphabet_string(const Alphabet& alphabet) {
  return std::string(alphabet.begin(), alphabet.end());
}

Alphabet alphabet_from_string(std::string_view symbols) {
  return Alphabet(symbols.begin(), symbols.end());
}

}  // namespace rrlab
