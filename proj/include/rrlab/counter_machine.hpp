#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rrlab/rng.hpp"
#include "rrlab/strings.hpp"
#include "rrlab/wfa.hpp"

namespace rrlab {

enum class UpdateOp { Reset, Add, Assign };

/// One counter update: ×0, +m with m ∈ {-1, 0, +1}, or :=m (extended machines).
struct CounterUpdate {
  UpdateOp op = UpdateOp::Add;
  std::int64_t value = 0;

  static CounterUpdate reset() { return {UpdateOp::Reset, 0}; }
  static CounterUpdate add(std::int64_t m) { return {UpdateOp::Add, m}; }
  static CounterUpdate assign(std::int64_t m) { return {UpdateOp::Assign, m}; }

  std::int64_t apply(std::int64_t c) const;

  /// "x0", "+1", "-1", "+0", ":=m"
  std::string to_string() const;
  static CounterUpdate parse(std::string_view text);

  friend bool operator==(const CounterUpdate&, const CounterUpdate&) = default;
};

enum class Restriction { General, Sigma, SigmaQ, SigmaW };

std::string to_string(Restriction r);
Restriction parse_restriction(std::string_view text);

/// Bit i is set iff counter i is zero.
using ZeroMask = std::uint32_t;

struct CmRule {
  std::vector<CounterUpdate> updates;
  std::size_t next = 0;
};

/// Real-time k-counter machine with explicit (σ, q, zero-mask) lookup tables
/// for the update function u and the transition function δ.
class CounterMachine {
 public:
  using RuleFn = std::function<CmRule(char symbol, std::size_t state, ZeroMask mask)>;

  /// Tabulates `rule` over every (σ, q, mask). Throws Error("InvalidMachine")
  /// on malformed rules (wrong arity, bad target, :=m without `extended`,
  /// +m with |m| > 1).
  CounterMachine(Alphabet alphabet, std::vector<std::string> states, std::size_t initial,
                 std::size_t counters, Restriction restriction, std::size_t window,
                 bool extended, const RuleFn& rule);

  const Alphabet& alphabet() const { return alphabet_; }
  const SymbolIndex& symbols() const { return index_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t initial() const { return initial_; }
  std::size_t counters() const { return counters_; }
  Restriction restriction() const { return restriction_; }
  std::size_t window() const { return window_; }
  bool extended() const { return extended_; }
  std::size_t mask_count() const { return std::size_t{1} << counters_; }

  const std::vector<CounterUpdate>& update(std::size_t symbol, std::size_t state,
                                           ZeroMask mask) const {
    return updates_[slot(symbol, state, mask)];
  }
  std::size_t next(std::size_t symbol, std::size_t state, ZeroMask mask) const {
    return transitions_[slot(symbol, state, mask)];
  }

 private:
  std::size_t slot(std::size_t symbol, std::size_t state, ZeroMask mask) const {
    return (symbol * states_.size() + state) * mask_count() + mask;
  }

  Alphabet alphabet_;
  SymbolIndex index_;
  std::vector<std::string> states_;
  std::size_t initial_;
  std::size_t counters_;
  Restriction restriction_;
  std::size_t window_;
  bool extended_;
  std::vector<std::vector<CounterUpdate>> updates_;
  std::vector<std::size_t> transitions_;
};

struct CmConfiguration {
  std::size_t state = 0;
  std::vector<std::int64_t> counters;

  friend bool operator==(const CmConfiguration&, const CmConfiguration&) = default;
};

ZeroMask zero_mask(std::span<const std::int64_t> counters);

CmConfiguration cm_initial(const CounterMachine& m);
CmConfiguration cm_step(const CounterMachine& m, const CmConfiguration& cfg, char x);
std::vector<std::int64_t> cm_encode(const CounterMachine& m, std::string_view x);

/// Whether the tables satisfy restriction level `level` (exhaustive scan).
bool satisfies(const CounterMachine& m, Restriction level);
/// Whether the tables satisfy the machine's declared restriction.
bool validate_restriction(const CounterMachine& m);

/// One two-state WFA per counter (unigram construction). Requires the
/// tables to be Σ-restricted; throws Error("RestrictionViolation") otherwise.
std::vector<Wfa> compile_sigma_restricted(const CounterMachine& m);

/// One WFA per counter built from an add-graph and a multiply-graph copy of
/// the machine. Requires (Σ×Q)-restricted tables.
std::vector<Wfa> compile_sigma_q_restricted(const CounterMachine& m);

/// The one-state, one-counter machine computing rectified counting on a*b*:
/// a/+1, (b, ≠0)/-1, (b, =0)/+0.
CounterMachine build_f0_cm();

/// Single-state Σ-restricted machine applying per-symbol updates to k counters.
CounterMachine build_unigram_cm(const Alphabet& alphabet,
                                const std::vector<std::vector<CounterUpdate>>& per_symbol,
                                bool extended = false);

/// Σ^{<=w} in length-lexicographic order; "" is the start window.
std::vector<std::string> window_states(const Alphabet& alphabet, std::size_t w);

/// Builds a Σ^w-restricted machine from a window-level rule; states and the
/// shifting transition function are generated.
CounterMachine build_window_cm(
    const Alphabet& alphabet, std::size_t w, std::size_t counters, bool extended,
    const std::function<std::vector<CounterUpdate>(char symbol, std::string_view window)>& rule);

CounterMachine random_sigma_cm(Rng& rng, const Alphabet& alphabet, std::size_t counters,
                               bool extended);
CounterMachine random_sigma_q_cm(Rng& rng, const Alphabet& alphabet, std::size_t states,
                                 std::size_t counters, bool extended);
CounterMachine random_sigma_w_cm(Rng& rng, const Alphabet& alphabet, std::size_t w,
                                 std::size_t counters, bool extended);

// JSON form:
// {"alphabet": [...], "states": [...], "initial": "q0", "counters": k,
//  "restriction": "general|sigma|sigma_q|sigma_w", "window": w, "extended": bool,
//  "update_table":     {symbol: {state: [[update strings per counter] per mask]}},
//  "transition_table": {symbol: {state: [next state per mask]}}}
nlohmann::json cm_to_json(const CounterMachine& m);
CounterMachine cm_from_json(const nlohmann::json& j);

}  // namespace rrlab
