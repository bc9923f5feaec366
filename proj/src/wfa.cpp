#include "rrlab/wfa.hpp"

#include <algorithm>

#include "rrlab/error.hpp"
#include "rrlab/json_io.hpp"

namespace rrlab {

using nlohmann::json;

Wfa::Wfa(Alphabet alphabet, RatVec initial, std::vector<RatMatrix> transitions,
         RatVec final_weights)
    : alphabet_(std::move(alphabet)),
      index_(alphabet_),
      initial_(std::move(initial)),
      transitions_(std::move(transitions)),
      final_(std::move(final_weights)) {
  const std::size_t n = initial_.size();
  if (final_.size() != n) fail("ShapeMismatch", "lambda and rho sizes differ");
  if (transitions_.size() != alphabet_.size()) {
    fail("ShapeMismatch", "need exactly one transition matrix per symbol");
  }
  for (const auto& t : transitions_) {
    if (t.rows() != n || t.cols() != n) {
      fail("ShapeMismatch", "transition matrix is not state_count x state_count");
    }
  }
}

RatVec Wfa::step(std::span<const Rat> forward, char symbol) const {
  return vec_mat(forward, transition(symbol));
}

RatVec Wfa::forward(std::string_view x) const {
  RatVec v = initial_;
  for (char c : x) v = step(v, c);
  return v;
}

Rat eval(const Wfa& a, std::string_view x) { return a.finish(a.forward(x)); }

Rat path_score(const Wfa& a, const WfaPath& path) {
  if (path.states.size() != path.symbols.size() + 1) {
    fail("InvalidPath", "path needs one more state than symbols");
  }
  for (auto q : path.states) {
    if (q >= a.state_count()) fail("InvalidPath", "path state out of range");
  }
  Rat score = a.initial()[path.states.front()];
  for (std::size_t i = 0; i < path.symbols.size(); ++i) {
    score *= a.transition(path.symbols[i])(path.states[i], path.states[i + 1]);
  }
  score *= a.final_weights()[path.states.back()];
  return score;
}

Rat eval_by_paths(const Wfa& a, std::string_view x, std::size_t max_paths) {
  const std::size_t n = a.state_count();
  for (char c : x) a.symbols().at(c);
  if (n == 0) return 0;

  std::size_t paths = 1;
  for (std::size_t i = 0; i <= x.size(); ++i) {
    if (paths > max_paths / n) {
      fail("PathBlowup", "path enumeration exceeds " + std::to_string(max_paths));
    }
    paths *= n;
  }

  WfaPath path;
  path.symbols = std::string(x);
  path.states.assign(x.size() + 1, 0);
  Rat total = 0;
  // Odometer over all state sequences.
  while (true) {
    total += path_score(a, path);
    std::size_t pos = 0;
    while (pos < path.states.size() && ++path.states[pos] == n) {
      path.states[pos] = 0;
      ++pos;
    }
    if (pos == path.states.size()) break;
  }
  return total;
}

namespace {

void require_same_alphabet(const Wfa& a, const Wfa& b) {
  Alphabet x = a.alphabet();
  Alphabet y = b.alphabet();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  if (x != y) {
    fail("AlphabetMismatch", "alphabets '" + alphabet_string(a.alphabet()) + "' and '" +
                                 alphabet_string(b.alphabet()) + "' differ");
  }
}

}  // namespace

Wfa wfa_add(const Wfa& a, const Wfa& b) {
  require_same_alphabet(a, b);
  const std::size_t na = a.state_count();
  const std::size_t n = na + b.state_count();

  RatVec initial(a.initial());
  initial.insert(initial.end(), b.initial().begin(), b.initial().end());
  RatVec final_weights(a.final_weights());
  final_weights.insert(final_weights.end(), b.final_weights().begin(), b.final_weights().end());

  std::vector<RatMatrix> transitions;
  for (char c : a.alphabet()) {
    RatMatrix t(n, n);
    const auto& ta = a.transition(c);
    const auto& tb = b.transition(c);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < na; ++j) t(i, j) = ta(i, j);
    for (std::size_t i = 0; i < b.state_count(); ++i)
      for (std::size_t j = 0; j < b.state_count(); ++j) t(na + i, na + j) = tb(i, j);
    transitions.push_back(std::move(t));
  }
  return Wfa(a.alphabet(), std::move(initial), std::move(transitions), std::move(final_weights));
}

Wfa wfa_scale(const Wfa& a, const Rat& w) {
  RatVec final_weights = a.final_weights();
  for (auto& r : final_weights) r *= w;
  return Wfa(a.alphabet(), a.initial(), a.transitions(), std::move(final_weights));
}

Wfa constant_wfa(const Alphabet& alphabet, const Rat& c) {
  std::vector<RatMatrix> transitions(alphabet.size(), RatMatrix::identity(1));
  return Wfa(alphabet, RatVec{1}, std::move(transitions), RatVec{c});
}

Wfa wfa_add_const(const Wfa& a, const Rat& c) {
  return wfa_add(a, constant_wfa(a.alphabet(), c));
}

Wfa wfa_affine(std::span<const Wfa> machines, std::span<const Rat> weights, const Rat& bias) {
  if (machines.empty()) fail("InvalidArgument", "wfa_affine needs at least one machine");
  if (machines.size() != weights.size()) {
    fail("ArityMismatch", "wfa_affine: one weight per machine required");
  }
  Wfa acc = wfa_scale(machines[0], weights[0]);
  for (std::size_t i = 1; i < machines.size(); ++i) {
    acc = wfa_add(acc, wfa_scale(machines[i], weights[i]));
  }
  return wfa_add_const(acc, bias);
}

Wfa build_binary_value(unsigned base) {
  if (base < 2 || base > 36) fail("InvalidArgument", "base must be in [2, 36]");
  Alphabet digits;
  for (unsigned d = 0; d < base; ++d) {
    digits.push_back(d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
  }
  std::vector<RatMatrix> transitions;
  for (unsigned d = 0; d < base; ++d) {
    // q0 -σ/1-> q0, q0 -σ/σ-> q1, q1 -σ/base-> q1
    transitions.push_back(RatMatrix{{Rat(1), Rat(d)}, {Rat(0), Rat(base)}});
  }
  return Wfa(std::move(digits), RatVec{1, 0}, std::move(transitions), RatVec{0, 1});
}

json wfa_to_json(const Wfa& a) {
  json j;
  j["alphabet"] = alphabet_to_json(a.alphabet());
  j["lambda"] = vec_to_json(a.initial());
  j["rho"] = vec_to_json(a.final_weights());
  json t = json::object();
  for (char c : a.alphabet()) t[symbol_string(c)] = matrix_to_json(a.transition(c));
  j["transitions"] = std::move(t);
  return j;
}

Wfa wfa_from_json(const json& j) {
  Alphabet alphabet = alphabet_from_json(require(j, "alphabet"));
  RatVec initial = vec_from_json(require(j, "lambda"));
  RatVec final_weights = vec_from_json(require(j, "rho"));
  const json& t = require(j, "transitions");
  if (!t.is_object()) fail("FormatError", "'transitions' must be an object keyed by symbol");
  const std::size_t n = initial.size();
  std::vector<RatMatrix> transitions;
  for (char c : alphabet) {
    auto key = symbol_string(c);
    if (!t.contains(key)) fail("FormatError", "no transition matrix for symbol '" + key + "'");
    transitions.push_back(matrix_from_json(t.at(key), n, n));
  }
  if (t.size() != alphabet.size()) {
    fail("FormatError", "transition matrices given for symbols outside the alphabet");
  }
  return Wfa(std::move(alphabet), std::move(initial), std::move(transitions),
             std::move(final_weights));
}

}  // namespace rrlab
