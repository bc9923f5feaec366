#pragma once

// Reference implementations used as test oracles. They share no code with
// the library: languages are checked with std::regex plus counting, series
// with plain integer arithmetic.

#include <cstdint>
#include <regex>
#include <string>
#include <string_view>

#include "rrlab/error.hpp"
#include "rrlab/languages.hpp"
#include "rrlab/rng.hpp"
#include "rrlab/wfa.hpp"

namespace rrlab::ref {

inline long diff_ab(std::string_view x) {
  long d = 0;
  for (char c : x) d += c == 'a' ? 1 : -1;
  return d;
}

// a^n b^n with n = k; true if x starts with it.
inline bool starts_with_block(std::string_view x, std::size_t k) {
  if (x.size() < 2 * k) return false;
  return x.substr(0, 2 * k) == std::string(k, 'a') + std::string(k, 'b');
}

inline bool ends_with_block(std::string_view x, std::size_t k) {
  if (x.size() < 2 * k) return false;
  return x.substr(x.size() - 2 * k) == std::string(k, 'a') + std::string(k, 'b');
}

inline bool in_language(Language l, std::string_view x) {
  static const std::regex a_star_b_star("^a*b*$");
  const std::string s(x);
  switch (l) {
    case Language::Anbn:
      return std::regex_match(s, a_star_b_star) && diff_ab(x) == 0;
    case Language::AnbnSigma:
    case Language::AnbnSigmaEps:
      if (x.empty()) return l == Language::AnbnSigmaEps;
      for (std::size_t k = 1; 2 * k <= x.size(); ++k) {
        if (starts_with_block(x, k)) return true;
      }
      return false;
    case Language::LLeq:
      return diff_ab(x) <= 0;
    case Language::L5:
      return diff_ab(x) > -5 && diff_ab(x) < 5;
    case Language::SigmaAnbn:
      for (std::size_t k = 1; 2 * k <= x.size(); ++k) {
        if (ends_with_block(x, k)) return true;
      }
      return false;
  }
  return false;
}

// Value of a digit string in the given base, as a plain integer.
inline std::uint64_t positional_value(std::string_view digits, unsigned base) {
  std::uint64_t v = 0;
  for (char d : digits) v = v * base + static_cast<std::uint64_t>(d - '0');
  return v;
}

inline Rat q(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Kind of the rrlab::Error thrown by f, or "none".
template <class F>
std::string error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

inline Wfa random_wfa(Rng& rng, const Alphabet& alphabet, std::size_t n) {
  auto entry = [&] { return q(rng.range(-2, 2), rng.range(1, 3)); };
  RatVec init(n), fin(n);
  for (auto& v : init) v = entry();
  for (auto& v : fin) v = entry();
  std::vector<RatMatrix> ts;
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry();
    ts.push_back(std::move(m));
  }
  return Wfa(alphabet, std::move(init), std::move(ts), std::move(fin));
}

}  // namespace rrlab::ref
