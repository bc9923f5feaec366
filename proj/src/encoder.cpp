#include "rrlab/encoder.hpp"

#include "rrlab/error.hpp"

namespace rrlab {

StateVec run(const Encoder& enc, std::string_view x) {
  StateVec s = enc.initial();
  for (char c : x) s = enc.step(s, c);
  return s;
}

RatVec encode(const Encoder& enc, std::string_view x) { return enc.readout(run(enc, x)); }

StateVec CmEncoder::initial() const {
  StateVec s(m_.counters() + 1);
  s[0] = static_cast<long>(m_.initial());
  return s;
}

StateVec CmEncoder::step(const StateVec& state, char x) const {
  CmConfiguration cfg;
  cfg.state = state[0].get_num().get_ui();
  for (std::size_t i = 1; i < state.size(); ++i) cfg.counters.push_back(state[i].get_num().get_si());
  cfg = cm_step(m_, cfg, x);
  StateVec out(state.size());
  out[0] = static_cast<long>(cfg.state);
  for (std::size_t i = 0; i < cfg.counters.size(); ++i) out[i + 1] = static_cast<long>(cfg.counters[i]);
  return out;
}

RatVec CmEncoder::readout(const StateVec& state) const {
  return RatVec(state.begin() + 1, state.end());
}

WfaEncoder::WfaEncoder(std::vector<Wfa> machines, std::string name)
    : machines_(std::move(machines)), name_(std::move(name)) {
  if (machines_.empty()) fail("InvalidArgument", "WfaEncoder needs at least one automaton");
  std::size_t off = 0;
  for (const auto& m : machines_) {
    if (m.alphabet() != machines_.front().alphabet()) {
      fail("AlphabetMismatch", "WfaEncoder automata must share one alphabet");
    }
    offsets_.push_back(off);
    off += m.state_count();
  }
  offsets_.push_back(off);
}

StateVec WfaEncoder::initial() const {
  StateVec s;
  for (const auto& m : machines_) s.insert(s.end(), m.initial().begin(), m.initial().end());
  return s;
}

StateVec WfaEncoder::step(const StateVec& state, char x) const {
  StateVec out;
  out.reserve(state.size());
  for (std::size_t i = 0; i < machines_.size(); ++i) {
    std::span<const Rat> part(state.data() + offsets_[i], offsets_[i + 1] - offsets_[i]);
    auto next = machines_[i].step(part, x);
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

RatVec WfaEncoder::readout(const StateVec& state) const {
  RatVec out;
  for (std::size_t i = 0; i < machines_.size(); ++i) {
    std::span<const Rat> part(state.data() + offsets_[i], offsets_[i + 1] - offsets_[i]);
    out.push_back(machines_[i].finish(part));
  }
  return out;
}

}  // namespace rrlab
