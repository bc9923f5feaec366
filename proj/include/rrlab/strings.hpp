#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rrlab {

/// Symbols are single characters; an alphabet is an ordered symbol list.
using Alphabet = std::vector<char>;

/// Constant-time symbol -> position lookup for an alphabet.
class SymbolIndex {
 public:
  SymbolIndex() { slots_.fill(-1); }
  explicit SymbolIndex(const Alphabet& alphabet);

  /// Position of c in the alphabet, or -1.
  int find(char c) const { return slots_[static_cast<unsigned char>(c)]; }
  /// Position of c; throws Error("UnknownSymbol") when absent.
  std::size_t at(char c) const;

 private:
  std::array<std::int16_t, 256> slots_{};
};

/// All strings of exactly length n in lexicographic order of the alphabet.
std::vector<std::string> strings_of_length(const Alphabet& alphabet, std::size_t n);
/// All strings of length <= max_len in length-lexicographic order (ε first).
std::vector<std::string> strings_up_to(const Alphabet& alphabet, std::size_t max_len);

std::size_t count_symbol(std::string_view x, char c);
std::string symbol_string(char c);
std::string alphabet_string(const Alphabet& alphabet);
Alphabet alphabet_from_string(std::string_view symbols);

/// Visits every string of length <= max_len depth-first, threading a state
/// through `step` so each prefix is extended once. `visit(prefix, state)`
/// sees ε first.
template <class State, class Step, class Visit>
void walk_strings(const Alphabet& alphabet, std::size_t max_len, const State& start,
                  const Step& step, const Visit& visit) {
  std::string prefix;
  auto rec = [&](auto& self, const State& state) -> void {
    visit(std::string_view(prefix), state);
    if (prefix.size() == max_len) return;
    for (char c : alphabet) {
      prefix.push_back(c);
      self(self, step(state, c));
      prefix.pop_back();
    }
  };
  rec(rec, start);
}

}  // namespace rrlab
