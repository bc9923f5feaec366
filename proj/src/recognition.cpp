#include "rrlab/recognition.hpp"

#include "rrlab/error.hpp"
#include "rrlab/json_io.hpp"

namespace rrlab {

using nlohmann::json;

bool LinearThresholdDecoder::operator()(std::span<const Rat> h) const {
  if (h.size() != w.size()) {
    fail("ArityMismatch", "decoder reads " + std::to_string(w.size()) + " values, got " +
                              std::to_string(h.size()));
  }
  return step_positive(dot(w, h) + b);
}

bool TwoLayerDecoder::operator()(std::span<const Rat> h) const {
  if (h.size() != w.cols()) {
    fail("ArityMismatch", "decoder reads " + std::to_string(w.cols()) + " values, got " +
                              std::to_string(h.size()));
  }
  RatVec hidden(w.rows());
  for (std::size_t r = 0; r < w.rows(); ++r) {
    hidden[r] = step_positive(dot(w.row(r), h) + b[r]) ? 1 : 0;
  }
  return out(hidden);
}

std::size_t decoder_arity(const Decoder& d) {
  return std::visit([](const auto& x) { return x.arity(); }, d);
}

bool apply_decoder(const Decoder& d, std::span<const Rat> h) {
  return std::visit([&](const auto& x) { return x(h); }, d);
}

bool decide(const Encoder& enc, const Decoder& dec, std::string_view x) {
  if (decoder_arity(dec) != enc.readout_dim()) {
    fail("ArityMismatch", "decoder arity " + std::to_string(decoder_arity(dec)) +
                              " does not match encoder readout " +
                              std::to_string(enc.readout_dim()));
  }
  return apply_decoder(dec, encode(enc, x));
}

bool decide(const Pipeline& p, std::string_view x) { return decide(*p.encoder, p.decoder, x); }

std::vector<Mismatch> equivalence_sweep(const Pipeline& p, const MembershipOracle& oracle,
                                        std::size_t max_len) {
  const Encoder& enc = *p.encoder;
  if (decoder_arity(p.decoder) != enc.readout_dim()) {
    fail("ArityMismatch", "decoder arity does not match encoder readout");
  }
  std::vector<Mismatch> out;
  walk_strings(
      enc.alphabet(), max_len, enc.initial(),
      [&](const StateVec& s, char c) { return enc.step(s, c); },
      [&](std::string_view x, const StateVec& s) {
        const bool actual = apply_decoder(p.decoder, enc.readout(s));
        const bool expected = oracle(x);
        if (actual != expected) out.push_back({std::string(x), expected, actual});
      });
  return out;
}

namespace {

json matrix_json(const RatMatrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", matrix_to_json(m)}};
}

RatMatrix matrix_json_in(const json& j) {
  return matrix_from_json(require(j, "data"), require(j, "rows").get<std::size_t>(),
                          require(j, "cols").get<std::size_t>());
}

json linear_json(const LinearThresholdDecoder& d) {
  return json{{"type", "linear"}, {"w", vec_to_json(d.w)}, {"b", rat_to_json(d.b)}};
}

LinearThresholdDecoder linear_in(const json& j) {
  return {vec_from_json(require(j, "w")), rat_from_json(require(j, "b"))};
}

}  // namespace

json decoder_to_json(const Decoder& d) {
  if (const auto* l = std::get_if<LinearThresholdDecoder>(&d)) return linear_json(*l);
  const auto& t = std::get<TwoLayerDecoder>(d);
  return json{{"type", "two_layer"},
              {"w", matrix_json(t.w)},
              {"b", vec_to_json(t.b)},
              {"out", linear_json(t.out)}};
}

Decoder decoder_from_json(const json& j) {
  const auto type = require(j, "type").get<std::string>();
  if (type == "linear") return linear_in(j);
  if (type == "two_layer") {
    TwoLayerDecoder t{matrix_json_in(require(j, "w")), vec_from_json(require(j, "b")),
                      linear_in(require(j, "out"))};
    if (t.b.size() != t.w.rows() || t.out.w.size() != t.w.rows()) {
      fail("FormatError", "two-layer decoder shapes disagree");
    }
    return t;
  }
  fail("FormatError", "unknown decoder type '" + type + "'");
}

}  // namespace rrlab
