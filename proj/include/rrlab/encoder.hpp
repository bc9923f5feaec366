#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rrlab/counter_machine.hpp"
#include "rrlab/rational.hpp"
#include "rrlab/strings.hpp"
#include "rrlab/wfa.hpp"

namespace rrlab {

/// Full recurrent state of an encoder, flattened to rationals.
using StateVec = RatVec;

/// A recurrent string encoder stepped one symbol at a time. Implementations
/// are immutable; the state is passed in and out explicitly.
class Encoder {
 public:
  virtual ~Encoder() = default;

  virtual const Alphabet& alphabet() const = 0;
  virtual StateVec initial() const = 0;
  /// Throws Error("UnknownSymbol") for symbols outside the alphabet.
  virtual StateVec step(const StateVec& state, char x) const = 0;
  /// The vector a decoder reads.
  virtual RatVec readout(const StateVec& state) const = 0;
  virtual std::size_t readout_dim() const = 0;
  virtual std::string name() const = 0;
  /// Minimal configuration used for space profiling; the full state by default.
  virtual StateVec configuration(const StateVec& state) const { return state; }
};

using EncoderPtr = std::shared_ptr<const Encoder>;

StateVec run(const Encoder& enc, std::string_view x);
/// readout(run(x))
RatVec encode(const Encoder& enc, std::string_view x);

/// State is [q, c_1..c_k]; readout is the counter vector.
class CmEncoder final : public Encoder {
 public:
  explicit CmEncoder(CounterMachine m, std::string name = "cm")
      : m_(std::move(m)), name_(std::move(name)) {}

  const Alphabet& alphabet() const override { return m_.alphabet(); }
  StateVec initial() const override;
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override;
  std::size_t readout_dim() const override { return m_.counters(); }
  std::string name() const override { return name_; }

  const CounterMachine& machine() const { return m_; }

 private:
  CounterMachine m_;
  std::string name_;
};

/// Runs several WFAs in lockstep. State is the concatenated forward vectors;
/// readout is one value per automaton.
class WfaEncoder final : public Encoder {
 public:
  explicit WfaEncoder(std::vector<Wfa> machines, std::string name = "wfa");

  const Alphabet& alphabet() const override { return machines_.front().alphabet(); }
  StateVec initial() const override;
  StateVec step(const StateVec& state, char x) const override;
  RatVec readout(const StateVec& state) const override;
  std::size_t readout_dim() const override { return machines_.size(); }
  std::string name() const override { return name_; }

  const std::vector<Wfa>& machines() const { return machines_; }

 private:
  std::vector<Wfa> machines_;
  std::vector<std::size_t> offsets_;
  std::string name_;
};

}  // namespace rrlab
