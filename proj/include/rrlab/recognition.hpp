#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rrlab/encoder.hpp"
#include "rrlab/matrix.hpp"

namespace rrlab {

/// Strict step: 1 iff v > 0.
inline bool step_positive(const Rat& v) { return sgn(v) > 0; }

/// D¹: 𝟙>0(w·h + b).
struct LinearThresholdDecoder {
  RatVec w;
  Rat b;

  std::size_t arity() const { return w.size(); }
  /// Throws Error("ArityMismatch") when h has the wrong length.
  bool operator()(std::span<const Rat> h) const;
};

/// D²: a hidden layer of 𝟙>0 units (rows of w, plus b) feeding a D¹.
struct TwoLayerDecoder {
  RatMatrix w;
  RatVec b;
  LinearThresholdDecoder out;

  std::size_t arity() const { return w.cols(); }
  bool operator()(std::span<const Rat> h) const;
};

using Decoder = std::variant<LinearThresholdDecoder, TwoLayerDecoder>;

std::size_t decoder_arity(const Decoder& d);
bool apply_decoder(const Decoder& d, std::span<const Rat> h);

/// An encoder-decoder pair.
struct Pipeline {
  EncoderPtr encoder;
  Decoder decoder;
  std::string name;
};

/// d(e(x)). Throws Error("ArityMismatch") when the decoder does not read the
/// encoder's readout.
bool decide(const Encoder& enc, const Decoder& dec, std::string_view x);
bool decide(const Pipeline& p, std::string_view x);

using MembershipOracle = std::function<bool(std::string_view)>;

struct Mismatch {
  std::string input;
  bool expected = false;
  bool actual = false;
};

/// Compares decide against `oracle` on every string of length <= max_len,
/// in depth-first order with ε first. Empty means agreement.
std::vector<Mismatch> equivalence_sweep(const Pipeline& p, const MembershipOracle& oracle,
                                        std::size_t max_len);

// Decoder JSON: {"type": "linear", "w": [...], "b": "p/q"} or
// {"type": "two_layer", "w": {"rows", "cols", "data"}, "b": [...], "out": linear}.
nlohmann::json decoder_to_json(const Decoder& d);
Decoder decoder_from_json(const nlohmann::json& j);

}  // namespace rrlab
