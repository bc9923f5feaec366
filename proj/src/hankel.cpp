#include "rrlab/hankel.hpp"

#include <algorithm>
#include <set>

#include "rrlab/error.hpp"

namespace rrlab {

HankelBlock build_block(const SeriesOracle& f, std::vector<std::string> prefixes,
                        std::vector<std::string> suffixes) {
  RatMatrix entries(prefixes.size(), suffixes.size());
  for (std::size_t i = 0; i < prefixes.size(); ++i)
    for (std::size_t j = 0; j < suffixes.size(); ++j) entries(i, j) = f(prefixes[i] + suffixes[j]);
  return HankelBlock{std::move(prefixes), std::move(suffixes), std::move(entries)};
}

namespace {

void require_ab(std::string_view x) {
  for (char c : x) {
    if (c != 'a' && c != 'b') {
      fail("UnknownSymbol", "symbol '" + symbol_string(c) + "' is not in {a,b}");
    }
  }
}

bool in_a_star_b_star(std::string_view x) {
  return x.find("ba") == std::string_view::npos;
}

}  // namespace

Rat f0(std::string_view x) {
  require_ab(x);
  long diff = static_cast<long>(count_symbol(x, 'a')) - static_cast<long>(count_symbol(x, 'b'));
  return Rat(std::max(diff, 0L));
}

Rat f_anbn(std::string_view x) {
  require_ab(x);
  if (!in_a_star_b_star(x)) return Rat(-1, 2);
  long diff = static_cast<long>(count_symbol(x, 'a')) - static_cast<long>(count_symbol(x, 'b'));
  return Rat(1, 2) - 2 * Rat(diff * diff);
}

SeriesOracle f0_oracle() { return {{'a', 'b'}, f0}; }
SeriesOracle anbn_oracle() { return {{'a', 'b'}, f_anbn}; }

SeriesOracle constant_oracle(Alphabet alphabet, Rat c) {
  return {std::move(alphabet), [c](std::string_view) { return c; }};
}

SeriesOracle wfa_oracle(Wfa a) {
  Alphabet alphabet = a.alphabet();
  return {std::move(alphabet), [a = std::move(a)](std::string_view x) { return eval(a, x); }};
}

std::size_t unbounded_rank_witness(const SeriesOracle& f, std::size_t n) {
  std::vector<std::string> prefixes, suffixes;
  for (std::size_t i = 0; i <= n; ++i) {
    prefixes.push_back(std::string(i, 'a'));
    suffixes.push_back(std::string(i, 'b'));
  }
  return rank(build_block(f, std::move(prefixes), std::move(suffixes)).entries);
}

Wfa spectral_reconstruct(const SeriesOracle& f, const std::vector<std::string>& prefixes,
                         const std::vector<std::string>& suffixes) {
  const std::set<std::string> prefix_set(prefixes.begin(), prefixes.end());
  if (!prefix_set.contains("")) fail("InvalidArgument", "prefix set must contain the empty string");
  for (const auto& p : prefixes) {
    if (!p.empty() && !prefix_set.contains(p.substr(0, p.size() - 1))) {
      fail("InvalidArgument", "prefix set is not prefix-closed at '" + p + "'");
    }
  }
  auto eps_col = std::find(suffixes.begin(), suffixes.end(), std::string());
  if (eps_col == suffixes.end()) fail("InvalidArgument", "suffix set must contain the empty string");
  const std::size_t eps_j = static_cast<std::size_t>(eps_col - suffixes.begin());

  const HankelBlock block = build_block(f, prefixes, suffixes);

  // Greedy basis: keep a row when it raises the rank of the rows kept so far.
  std::vector<std::size_t> basis;
  std::size_t current = 0;
  for (std::size_t i = 0; i < prefixes.size(); ++i) {
    basis.push_back(i);
    std::size_t r = rank(block.entries.select_rows(basis));
    if (r > current) {
      current = r;
    } else {
      basis.pop_back();
    }
  }
  const std::size_t r = basis.size();

  // Columns of `coeffs` are basis rows; solving coeffs·t = rowᵀ expresses a
  // Hankel row in the basis.
  const RatMatrix coeffs = block.entries.select_rows(basis).transpose();
  auto express = [&](const RatVec& row) -> RatVec {
    RatMatrix rhs(row.size(), 1, row);
    try {
      return solve_exact(coeffs, rhs).data();
    } catch (const Error& e) {
      if (e.kind() != "SingularSystem") throw;
      fail("IncompleteBlock", "a shifted Hankel row leaves the span of the basis rows");
    }
  };
  auto hankel_row = [&](const std::string& prefix) {
    RatVec row(suffixes.size());
    for (std::size_t j = 0; j < suffixes.size(); ++j) row[j] = f(prefix + suffixes[j]);
    return row;
  };

  if (r == 0) {
    for (char c : f.alphabet) {
      for (const auto& v : hankel_row(std::string(1, c))) {
        if (sgn(v) != 0) fail("IncompleteBlock", "a shifted Hankel row is nonzero on a zero block");
      }
    }
  }
  RatVec initial = r == 0 ? RatVec{} : express(hankel_row(""));
  RatVec final_weights(r);
  for (std::size_t i = 0; i < r; ++i) final_weights[i] = block.entries(basis[i], eps_j);

  std::vector<RatMatrix> transitions;
  for (char c : f.alphabet) {
    RatMatrix t(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      RatVec coeff = express(hankel_row(prefixes[basis[i]] + c));
      for (std::size_t j = 0; j < r; ++j) t(i, j) = coeff[j];
    }
    transitions.push_back(std::move(t));
  }
  return Wfa(f.alphabet, std::move(initial), std::move(transitions), std::move(final_weights));
}

}  // namespace rrlab
