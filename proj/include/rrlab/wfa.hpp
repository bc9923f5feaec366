#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rrlab/matrix.hpp"
#include "rrlab/rational.hpp"
#include "rrlab/strings.hpp"

namespace rrlab {

/// Weighted finite automaton over the field Q: initial weights, one
/// state_count x state_count transition matrix per symbol, final weights.
class Wfa {
 public:
  Wfa(Alphabet alphabet, RatVec initial, std::vector<RatMatrix> transitions,
      RatVec final_weights);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return initial_.size(); }
  const RatVec& initial() const { return initial_; }
  const RatVec& final_weights() const { return final_; }
  const RatMatrix& transition(char symbol) const {
    return transitions_[index_.at(symbol)];
  }
  const std::vector<RatMatrix>& transitions() const { return transitions_; }
  const SymbolIndex& symbols() const { return index_; }

  /// Forward weight vector after reading one more symbol.
  RatVec step(std::span<const Rat> forward, char symbol) const;
  /// λᵀ·τ(x₁)···τ(x_t)
  RatVec forward(std::string_view x) const;
  /// forward·ρ
  Rat finish(std::span<const Rat> forward) const { return dot(forward, final_); }

 private:
  Alphabet alphabet_;
  SymbolIndex index_;
  RatVec initial_;
  std::vector<RatMatrix> transitions_;
  RatVec final_;
};

/// A run q₀ -x₁-> q₁ ... -x_t-> q_t.
struct WfaPath {
  std::vector<std::size_t> states;
  std::string symbols;
};

/// A[x] computed as λᵀ·(∏ τ(x_i))·ρ.
Rat eval(const Wfa& a, std::string_view x);

/// λ(q₀)·∏τ(q_{i-1}, x_i, q_i)·ρ(q_t).
Rat path_score(const Wfa& a, const WfaPath& path);

/// Brute-force sum over every state sequence of length |x|+1. Throws
/// Error("PathBlowup") when state_count^(|x|+1) exceeds max_paths.
Rat eval_by_paths(const Wfa& a, std::string_view x, std::size_t max_paths = 1u << 22);

/// Disjoint union: a keeps its state indices, b's are shifted by a.state_count().
Wfa wfa_add(const Wfa& a, const Wfa& b);
/// Final weights multiplied by w.
Wfa wfa_scale(const Wfa& a, const Rat& w);
/// a plus a one-state machine computing the constant c.
Wfa wfa_add_const(const Wfa& a, const Rat& c);
/// Σ w_i·A_i[x] + b.
Wfa wfa_affine(std::span<const Wfa> machines, std::span<const Rat> weights, const Rat& bias);
/// One-state WFA computing c on every string.
Wfa constant_wfa(const Alphabet& alphabet, const Rat& c);

/// Two-state automaton mapping a digit string to its value in `base`
/// (digits '0'..'9' then 'a'..'z', so base <= 36).
Wfa build_binary_value(unsigned base = 2);

// JSON form: {"alphabet": ["0","1"], "lambda": ["1","0"], "rho": [...],
//             "transitions": {"0": [row-major "p/q" strings], ...}}
nlohmann::json wfa_to_json(const Wfa& a);
Wfa wfa_from_json(const nlohmann::json& j);

}  // namespace rrlab
