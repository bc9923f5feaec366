#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "rrlab/matrix.hpp"
#include "rrlab/wfa.hpp"

namespace rrlab {

/// A total, deterministic function Σ* -> Q.
struct SeriesOracle {
  Alphabet alphabet;
  std::function<Rat(std::string_view)> fn;

  Rat operator()(std::string_view x) const { return fn(x); }
};

/// Finite sub-block of a Hankel matrix: entry (i, j) = f(prefixes[i]·suffixes[j]).
struct HankelBlock {
  std::vector<std::string> prefixes;
  std::vector<std::string> suffixes;
  RatMatrix entries;
};

HankelBlock build_block(const SeriesOracle& f, std::vector<std::string> prefixes,
                        std::vector<std::string> suffixes);

/// Rectified counting: max(#a(x) - #b(x), 0).
Rat f0(std::string_view x);

/// 1/2 - 2(#a - #b)² on a*b*, -1/2 elsewhere. Positive exactly on aⁿbⁿ.
Rat f_anbn(std::string_view x);

SeriesOracle f0_oracle();
SeriesOracle anbn_oracle();
SeriesOracle constant_oracle(Alphabet alphabet, Rat c);
SeriesOracle wfa_oracle(Wfa a);

/// Rank of the block with prefixes {a^i}_{i<=n} and suffixes {b^j}_{j<=n}.
std::size_t unbounded_rank_witness(const SeriesOracle& f, std::size_t n);

/// Exact spectral (basis) reconstruction from a complete Hankel sub-block.
///
/// Rows of the P x S block are scanned in the given order and the first
/// maximal independent set u_1..u_r becomes the state basis. Transition
/// operators are found by expressing each row u_i·σ (queried from f) in that
/// basis with solve_exact; λ expresses the ε row, ρ_i = f(u_i). Throws
/// Error("IncompleteBlock") when some u_i·σ row leaves the basis row space,
/// and Error("InvalidArgument") when P is not prefix-closed or ε is missing.
Wfa spectral_reconstruct(const SeriesOracle& f, const std::vector<std::string>& prefixes,
                         const std::vector<std::string>& suffixes);

}  // namespace rrlab
