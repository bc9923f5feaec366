#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rrlab {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator after each arithmetic operation.
using Rat = mpq_class;
using BigInt = mpz_class;
using RatVec = std::vector<Rat>;

/// Parses "p/q" or "p" (optional leading '-'); throws Error("ParseError").
Rat parse_rat(std::string_view text);

/// "p/q", or "p" when the value is an integer.
inline std::string to_string(const Rat& r) { return r.get_str(); }

std::vector<std::string> to_strings(std::span<const Rat> v);

Rat dot(std::span<const Rat> a, std::span<const Rat> b);

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Exact square root when r is the square of a rational; false otherwise.
bool exact_sqrt(const Rat& r, Rat& out);

}  // namespace rrlab
