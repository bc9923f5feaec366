#include "rrlab/rational.hpp"

#include <cctype>

#include "rrlab/error.hpp"

namespace rrlab {
namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!valid_integer(num) || (slash != std::string_view::npos && !valid_integer(den))) {
    fail("ParseError", "not a rational literal: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  BigInt n(std::string(num), 10);
  BigInt d = 1;
  if (slash != std::string_view::npos) {
    if (den.front() == '+') den.remove_prefix(1);
    d = BigInt(std::string(den), 10);
    if (d == 0) fail("ParseError", "zero denominator in '" + std::string(text) + "'");
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::vector<std::string> to_strings(std::span<const Rat> v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

Rat dot(std::span<const Rat> a, std::span<const Rat> b) {
  if (a.size() != b.size()) fail("ArityMismatch", "dot product of unequal lengths");
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
  }
  return acc;
}

bool exact_sqrt(const Rat& r, Rat& out) {
  if (sgn(r) < 0) return false;
  const BigInt& n = r.get_num();
  const BigInt& d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return false;
  }
  BigInt sn = sqrt(n);
  BigInt sd = sqrt(d);
  out = Rat(sn, sd);
  out.canonicalize();
  return true;
}

}  // namespace rrlab
