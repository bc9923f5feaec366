#include "rrlab/counter_machine.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "rrlab/error.hpp"
#include "rrlab/json_io.hpp"

namespace rrlab {

using nlohmann::json;

std::int64_t CounterUpdate::apply(std::int64_t c) const {
  switch (op) {
    case UpdateOp::Reset:
      return 0;
    case UpdateOp::Add:
      return c + value;
    case UpdateOp::Assign:
      return value;
  }
  return c;
}

std::string CounterUpdate::to_string() const {
  switch (op) {
    case UpdateOp::Reset:
      return "x0";
    case UpdateOp::Add:
      return (value < 0 ? "-" : "+") + std::to_string(value < 0 ? -value : value);
    case UpdateOp::Assign:
      return ":=" + std::to_string(value);
  }
  return "?";
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    fail("ParseError", "bad counter update '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

CounterUpdate CounterUpdate::parse(std::string_view text) {
  if (text == "x0" || text == "*0") return reset();
  if (text.starts_with(":=")) return assign(parse_int(text.substr(2), text));
  if (text.starts_with("+") || text.starts_with("-")) {
    return add(parse_int(text, text));
  }
  fail("ParseError", "bad counter update '" + std::string(text) + "'");
}

std::string to_string(Restriction r) {
  switch (r) {
    case Restriction::General:
      return "general";
    case Restriction::Sigma:
      return "sigma";
    case Restriction::SigmaQ:
      return "sigma_q";
    case Restriction::SigmaW:
      return "sigma_w";
  }
  return "general";
}

Restriction parse_restriction(std::string_view text) {
  if (text == "general") return Restriction::General;
  if (text == "sigma") return Restriction::Sigma;
  if (text == "sigma_q") return Restriction::SigmaQ;
  if (text == "sigma_w") return Restriction::SigmaW;
  fail("ParseError", "unknown restriction '" + std::string(text) + "'");
}

CounterMachine::CounterMachine(Alphabet alphabet, std::vector<std::string> states,
                               std::size_t initial, std::size_t counters,
                               Restriction restriction, std::size_t window, bool extended,
                               const RuleFn& rule)
    : alphabet_(std::move(alphabet)),
      index_(alphabet_),
      states_(std::move(states)),
      initial_(initial),
      counters_(counters),
      restriction_(restriction),
      window_(window),
      extended_(extended) {
  if (states_.empty()) fail("InvalidMachine", "a counter machine needs at least one state");
  if (initial_ >= states_.size()) fail("InvalidMachine", "initial state out of range");
  if (counters_ > 16) fail("InvalidMachine", "at most 16 counters are supported");

  const std::size_t slots = alphabet_.size() * states_.size() * mask_count();
  updates_.resize(slots);
  transitions_.resize(slots);
  for (std::size_t s = 0; s < alphabet_.size(); ++s) {
    for (std::size_t q = 0; q < states_.size(); ++q) {
      for (ZeroMask mask = 0; mask < mask_count(); ++mask) {
        CmRule r = rule(alphabet_[s], q, mask);
        if (r.updates.size() != counters_) {
          fail("InvalidMachine", "rule gives " + std::to_string(r.updates.size()) +
                                     " updates for " + std::to_string(counters_) + " counters");
        }
        if (r.next >= states_.size()) fail("InvalidMachine", "transition target out of range");
        for (const auto& u : r.updates) {
          if (u.op == UpdateOp::Assign && !extended_) {
            fail("InvalidMachine", "':=' updates need an extended machine");
          }
          if (u.op == UpdateOp::Add && (u.value < -1 || u.value > 1)) {
            fail("InvalidMachine", "additive updates are limited to -1, +0, +1");
          }
        }
        updates_[slot(s, q, mask)] = std::move(r.updates);
        transitions_[slot(s, q, mask)] = r.next;
      }
    }
  }
}

ZeroMask zero_mask(std::span<const std::int64_t> counters) {
  ZeroMask mask = 0;
  for (std::size_t i = 0; i < counters.size(); ++i) {
    if (counters[i] == 0) mask |= ZeroMask{1} << i;
  }
  return mask;
}

CmConfiguration cm_initial(const CounterMachine& m) {
  return {m.initial(), std::vector<std::int64_t>(m.counters(), 0)};
}

CmConfiguration cm_step(const CounterMachine& m, const CmConfiguration& cfg, char x) {
  const std::size_t s = m.symbols().at(x);
  const ZeroMask mask = zero_mask(cfg.counters);
  const auto& ups = m.update(s, cfg.state, mask);
  CmConfiguration out;
  out.state = m.next(s, cfg.state, mask);
  out.counters.resize(cfg.counters.size());
  for (std::size_t i = 0; i < ups.size(); ++i) out.counters[i] = ups[i].apply(cfg.counters[i]);
  return out;
}

std::vector<std::int64_t> cm_encode(const CounterMachine& m, std::string_view x) {
  CmConfiguration cfg = cm_initial(m);
  for (char c : x) cfg = cm_step(m, cfg, c);
  return cfg.counters;
}

namespace {

std::string shift_window(std::string_view window, char c, std::size_t w) {
  std::string next(window);
  next.push_back(c);
  if (next.size() > w) next.erase(0, next.size() - w);
  return next;
}

bool mask_blind(const CounterMachine& m) {
  for (std::size_t s = 0; s < m.alphabet().size(); ++s)
    for (std::size_t q = 0; q < m.states().size(); ++q)
      for (ZeroMask mask = 1; mask < m.mask_count(); ++mask) {
        if (m.update(s, q, mask) != m.update(s, q, 0) || m.next(s, q, mask) != m.next(s, q, 0)) {
          return false;
        }
      }
  return true;
}

bool state_blind(const CounterMachine& m) {
  for (std::size_t s = 0; s < m.alphabet().size(); ++s)
    for (std::size_t q = 1; q < m.states().size(); ++q) {
      if (m.update(s, q, 0) != m.update(s, 0, 0) || m.next(s, q, 0) != m.next(s, 0, 0)) {
        return false;
      }
    }
  return true;
}

bool window_shaped(const CounterMachine& m) {
  const auto expected = window_states(m.alphabet(), m.window());
  if (m.states() != expected || m.initial() != 0) return false;
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < expected.size(); ++i) pos[expected[i]] = i;
  for (std::size_t s = 0; s < m.alphabet().size(); ++s)
    for (std::size_t q = 0; q < expected.size(); ++q) {
      if (m.next(s, q, 0) != pos.at(shift_window(expected[q], m.alphabet()[s], m.window()))) {
        return false;
      }
    }
  return true;
}

}  // namespace

bool satisfies(const CounterMachine& m, Restriction level) {
  switch (level) {
    case Restriction::General:
      return true;
    case Restriction::Sigma:
      return mask_blind(m) && state_blind(m);
    case Restriction::SigmaQ:
      return mask_blind(m);
    case Restriction::SigmaW:
      return mask_blind(m) && window_shaped(m);
  }
  return false;
}

bool validate_restriction(const CounterMachine& m) { return satisfies(m, m.restriction()); }

namespace {

// Unrolls c' = r·c + u for one counter update.
void affine_parts(const CounterUpdate& u, Rat& r, Rat& add) {
  switch (u.op) {
    case UpdateOp::Reset:
      r = 0;
      add = 0;
      break;
    case UpdateOp::Add:
      r = 1;
      add = u.value;
      break;
    case UpdateOp::Assign:
      r = 0;
      add = u.value;
      break;
  }
}

}  // namespace

std::vector<Wfa> compile_sigma_restricted(const CounterMachine& m) {
  if (!satisfies(m, Restriction::Sigma)) {
    fail("RestrictionViolation", "machine is not Sigma-restricted");
  }
  std::vector<Wfa> out;
  for (std::size_t i = 0; i < m.counters(); ++i) {
    std::vector<RatMatrix> transitions;
    for (std::size_t s = 0; s < m.alphabet().size(); ++s) {
      Rat r, add;
      affine_parts(m.update(s, m.initial(), 0)[i], r, add);
      transitions.push_back(RatMatrix{{Rat(1), add}, {Rat(0), r}});
    }
    out.emplace_back(m.alphabet(), RatVec{1, 0}, std::move(transitions), RatVec{0, 1});
  }
  return out;
}

std::vector<Wfa> compile_sigma_q_restricted(const CounterMachine& m) {
  if (!satisfies(m, Restriction::SigmaQ)) {
    fail("RestrictionViolation", "machine is not (Sigma x Q)-restricted");
  }
  // States 0..n-1 are the add graph, n..2n-1 the multiply graph. A run stays
  // in the add graph until the step whose increment it picks up, then crosses
  // to the multiply graph and collects the later r factors.
  const std::size_t n = m.states().size();
  std::vector<Wfa> out;
  for (std::size_t i = 0; i < m.counters(); ++i) {
    std::vector<RatMatrix> transitions;
    for (std::size_t s = 0; s < m.alphabet().size(); ++s) {
      RatMatrix t(2 * n, 2 * n);
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t to = m.next(s, q, 0);
        Rat r, add;
        affine_parts(m.update(s, q, 0)[i], r, add);
        t(q, to) = 1;
        t(n + q, n + to) = r;
        t(q, n + to) += add;
      }
      transitions.push_back(std::move(t));
    }
    RatVec initial(2 * n), final_weights(2 * n);
    initial[m.initial()] = 1;
    for (std::size_t q = 0; q < n; ++q) final_weights[n + q] = 1;
    out.emplace_back(m.alphabet(), std::move(initial), std::move(transitions),
                     std::move(final_weights));
  }
  return out;
}

CounterMachine build_f0_cm() {
  return CounterMachine({'a', 'b'}, {"q0"}, 0, 1, Restriction::General, 0, false,
                        [](char c, std::size_t, ZeroMask mask) {
                          if (c == 'a') return CmRule{{CounterUpdate::add(1)}, 0};
                          const bool zero = (mask & 1u) != 0;
                          return CmRule{{CounterUpdate::add(zero ? 0 : -1)}, 0};
                        });
}

CounterMachine build_unigram_cm(const Alphabet& alphabet,
                                const std::vector<std::vector<CounterUpdate>>& per_symbol,
                                bool extended) {
  if (per_symbol.size() != alphabet.size()) {
    fail("ArityMismatch", "need one update vector per symbol");
  }
  const std::size_t k = per_symbol.empty() ? 0 : per_symbol.front().size();
  SymbolIndex idx(alphabet);
  return CounterMachine(alphabet, {"q0"}, 0, k, Restriction::Sigma, 0, extended,
                        [&](char c, std::size_t, ZeroMask) {
                          return CmRule{per_symbol[idx.at(c)], 0};
                        });
}

std::vector<std::string> window_states(const Alphabet& alphabet, std::size_t w) {
  return strings_up_to(alphabet, w);
}

CounterMachine build_window_cm(
    const Alphabet& alphabet, std::size_t w, std::size_t counters, bool extended,
    const std::function<std::vector<CounterUpdate>(char, std::string_view)>& rule) {
  auto states = window_states(alphabet, w);
  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < states.size(); ++i) pos[states[i]] = i;
  return CounterMachine(alphabet, states, 0, counters, Restriction::SigmaW, w, extended,
                        [&](char c, std::size_t q, ZeroMask) {
                          return CmRule{rule(c, states[q]),
                                        pos.at(shift_window(states[q], c, w))};
                        });
}

namespace {

CounterUpdate random_update(Rng& rng, bool extended) {
  const std::uint64_t choices = extended ? 5 : 4;
  switch (rng.below(choices)) {
    case 0:
      return CounterUpdate::reset();
    case 1:
      return CounterUpdate::add(-1);
    case 2:
      return CounterUpdate::add(0);
    case 3:
      return CounterUpdate::add(1);
    default:
      return CounterUpdate::assign(rng.range(-2, 2));
  }
}

std::vector<CounterUpdate> random_updates(Rng& rng, std::size_t k, bool extended) {
  std::vector<CounterUpdate> u;
  for (std::size_t i = 0; i < k; ++i) u.push_back(random_update(rng, extended));
  return u;
}

}  // namespace

CounterMachine random_sigma_cm(Rng& rng, const Alphabet& alphabet, std::size_t counters,
                               bool extended) {
  std::vector<std::vector<CounterUpdate>> per_symbol;
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    per_symbol.push_back(random_updates(rng, counters, extended));
  }
  if (counters == 0) per_symbol.assign(alphabet.size(), {});
  return CounterMachine(alphabet, {"q0"}, 0, counters, Restriction::Sigma, 0, extended,
                        [&, idx = SymbolIndex(alphabet)](char c, std::size_t, ZeroMask) {
                          return CmRule{per_symbol[idx.at(c)], 0};
                        });
}

CounterMachine random_sigma_q_cm(Rng& rng, const Alphabet& alphabet, std::size_t states,
                                 std::size_t counters, bool extended) {
  if (states == 0) fail("InvalidArgument", "need at least one state");
  std::vector<CmRule> table;
  for (std::size_t s = 0; s < alphabet.size(); ++s)
    for (std::size_t q = 0; q < states; ++q) {
      auto u = random_updates(rng, counters, extended);
      table.push_back({std::move(u), static_cast<std::size_t>(rng.below(states))});
    }
  std::vector<std::string> names;
  for (std::size_t q = 0; q < states; ++q) names.push_back("q" + std::to_string(q));
  SymbolIndex idx(alphabet);
  return CounterMachine(alphabet, names, 0, counters, Restriction::SigmaQ, 0, extended,
                        [&](char c, std::size_t q, ZeroMask) {
                          return table[idx.at(c) * states + q];
                        });
}

CounterMachine random_sigma_w_cm(Rng& rng, const Alphabet& alphabet, std::size_t w,
                                 std::size_t counters, bool extended) {
  std::unordered_map<std::string, std::vector<CounterUpdate>> table;
  for (const auto& win : window_states(alphabet, w))
    for (char c : alphabet) table[win + '|' + c] = random_updates(rng, counters, extended);
  return build_window_cm(alphabet, w, counters, extended,
                         [&](char c, std::string_view win) {
                           return table.at(std::string(win) + '|' + c);
                         });
}

json cm_to_json(const CounterMachine& m) {
  json j;
  j["alphabet"] = alphabet_to_json(m.alphabet());
  j["states"] = m.states();
  j["initial"] = m.states()[m.initial()];
  j["counters"] = m.counters();
  j["restriction"] = to_string(m.restriction());
  j["window"] = m.window();
  j["extended"] = m.extended();
  json ut = json::object();
  json tt = json::object();
  for (std::size_t s = 0; s < m.alphabet().size(); ++s) {
    const auto sym = symbol_string(m.alphabet()[s]);
    for (std::size_t q = 0; q < m.states().size(); ++q) {
      json ups = json::array();
      json nexts = json::array();
      for (ZeroMask mask = 0; mask < m.mask_count(); ++mask) {
        json row = json::array();
        for (const auto& u : m.update(s, q, mask)) row.push_back(u.to_string());
        ups.push_back(std::move(row));
        nexts.push_back(m.states()[m.next(s, q, mask)]);
      }
      ut[sym][m.states()[q]] = std::move(ups);
      tt[sym][m.states()[q]] = std::move(nexts);
    }
  }
  j["update_table"] = std::move(ut);
  j["transition_table"] = std::move(tt);
  return j;
}

CounterMachine cm_from_json(const json& j) {
  Alphabet alphabet = alphabet_from_json(require(j, "alphabet"));
  const json& states_j = require(j, "states");
  if (!states_j.is_array() || states_j.empty()) {
    fail("FormatError", "'states' must be a non-empty array of names");
  }
  std::vector<std::string> states;
  std::unordered_map<std::string, std::size_t> pos;
  for (const auto& s : states_j) {
    if (!s.is_string()) fail("FormatError", "state names must be strings");
    if (!pos.emplace(s.get<std::string>(), states.size()).second) {
      fail("FormatError", "duplicate state '" + s.get<std::string>() + "'");
    }
    states.push_back(s.get<std::string>());
  }
  auto state_id = [&](const json& name) -> std::size_t {
    if (!name.is_string() || !pos.contains(name.get<std::string>())) {
      fail("FormatError", "unknown state " + name.dump());
    }
    return pos.at(name.get<std::string>());
  };

  const std::size_t initial = state_id(require(j, "initial"));
  const auto k = require(j, "counters").get<std::size_t>();
  if (k > 16) fail("FormatError", "at most 16 counters are supported");
  const Restriction restriction = parse_restriction(j.value("restriction", "general"));
  const auto window = j.value("window", std::size_t{0});
  const bool extended = j.value("extended", false);
  const json& ut = require(j, "update_table");
  const json& tt = require(j, "transition_table");
  const std::size_t masks = std::size_t{1} << k;

  auto cell = [&](const json& table, char c, std::size_t q, ZeroMask mask) -> const json& {
    const auto sym = symbol_string(c);
    if (!table.contains(sym) || !table.at(sym).contains(states[q])) {
      fail("FormatError", "missing table entry for (" + sym + ", " + states[q] + ")");
    }
    const json& row = table.at(sym).at(states[q]);
    if (!row.is_array() || row.size() != masks) {
      fail("FormatError", "table entry for (" + sym + ", " + states[q] + ") needs " +
                              std::to_string(masks) + " zero-mask slots");
    }
    return row.at(mask);
  };

  return CounterMachine(
      std::move(alphabet), states, initial, k, restriction, window, extended,
      [&](char c, std::size_t q, ZeroMask mask) {
        const json& ups = cell(ut, c, q, mask);
        if (!ups.is_array()) fail("FormatError", "update entries must be arrays");
        CmRule rule;
        for (const auto& u : ups) {
          if (!u.is_string()) fail("FormatError", "counter updates must be strings");
          rule.updates.push_back(CounterUpdate::parse(u.get<std::string>()));
        }
        rule.next = state_id(cell(tt, c, q, mask));
        return rule;
      });
}

}  // namespace rrlab
