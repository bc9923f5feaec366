#include <gtest/gtest.h>

#include "reference.hpp"
#include "rrlab/constructions.hpp"
#include "rrlab/recognition.hpp"
#include "rrlab/strings.hpp"

namespace rrlab {
namespace {

using ref::error_kind;

MembershipOracle oracle(Language l) {
  return [l](std::string_view x) { return ref::in_language(l, x); };
}

TEST(Decoder, StrictThreshold) {
  const LinearThresholdDecoder d{{1, -1}, 0};
  EXPECT_FALSE(d(RatVec{2, 2}));
  EXPECT_TRUE(d(RatVec{3, 2}));
  EXPECT_EQ(error_kind([&] { d(RatVec{1}); }), "ArityMismatch");
}

TEST(Decoder, TwoLayer) {
  // Accepts iff exactly one input is positive.
  const TwoLayerDecoder d{RatMatrix{{1, 1}, {-1, -1}}, RatVec{Rat(-1, 2), Rat(3, 2)},
                          LinearThresholdDecoder{{1, 1}, Rat(-3, 2)}};
  EXPECT_FALSE(d(RatVec{0, 0}));
  EXPECT_TRUE(d(RatVec{1, 0}));
  EXPECT_FALSE(d(RatVec{1, 1}));
}

TEST(Decoder, JsonRoundTrip) {
  const Decoder a = LinearThresholdDecoder{{Rat(1, 3), -2}, Rat(1, 2)};
  const Decoder b = TwoLayerDecoder{RatMatrix{{1, 0}, {0, 1}}, RatVec{0, 1},
                                    LinearThresholdDecoder{{1, -1}, 0}};
  for (const Decoder& d : {a, b}) {
    const auto j = decoder_to_json(d);
    EXPECT_EQ(decoder_to_json(decoder_from_json(j)), j);
  }
  EXPECT_EQ(error_kind([] { decoder_from_json({{"type", "mlp"}}); }), "FormatError");
}

TEST(Decide, ArityMismatch) {
  const Pipeline p{build_stack_binary(), LinearThresholdDecoder{{1, 1}, 0}, "bad"};
  EXPECT_EQ(error_kind([&] { decide(p, "01"); }), "ArityMismatch");
}

TEST(Sweep, AlwaysRejectMissesAnbnMembers) {
  const Pipeline reject{build_stack_binary(), LinearThresholdDecoder{{0}, -1}, "reject"};
  const Pipeline p{build_l_leq_pipeline().encoder, LinearThresholdDecoder{{0}, -1}, "reject"};
  const auto m = equivalence_sweep(p, oracle(Language::Anbn), 2);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].input, "");
  EXPECT_EQ(m[1].input, "ab");
  EXPECT_TRUE(m[0].expected);
  EXPECT_FALSE(m[0].actual);
  EXPECT_TRUE(equivalence_sweep(reject, [](std::string_view) { return false; }, 4).empty());
}

struct Case {
  const char* pipeline;
  Language language;
  friend void PrintTo(const Case& c, std::ostream* os) { *os << c.pipeline; }
};

class ConstructionSweep : public ::testing::TestWithParam<Case> {};

TEST_P(ConstructionSweep, MatchesLanguageUpToLength12) {
  const Pipeline p = named_pipeline(GetParam().pipeline);
  const auto m = equivalence_sweep(p, oracle(GetParam().language), 12);
  EXPECT_TRUE(m.empty()) << m.size() << " mismatches, first '" << m.front().input << "'";
}

INSTANTIATE_TEST_SUITE_P(
    Pipelines, ConstructionSweep,
    ::testing::Values(Case{"slstm_anbn", Language::Anbn},
                      Case{"slstm_anbn_sigma", Language::AnbnSigma},
                      Case{"sqrnn_anbn_counters", Language::Anbn},
                      Case{"sqrnn2_anbn_sigma", Language::AnbnSigmaEps},
                      Case{"l_leq", Language::LLeq}, Case{"spectral_anbn", Language::Anbn}),
    [](const auto& info) { return std::string(info.param.pipeline); });

TEST(Sweep, AttentionPipelineAcceptsUnequalCounts) {
  const Pipeline p = named_pipeline("attention_equal_counts");
  const auto m = equivalence_sweep(
      p, [](std::string_view x) { return ref::diff_ab(x) != 0; }, 10);
  EXPECT_TRUE(m.empty());
}

TEST(Sweep, SigmaAnbnDemonstratorFails) {
  // A window-2 s-QRNN with D1 cannot decide Σ* a^n b^n; the demonstrator shows where.
  const auto m = equivalence_sweep(named_pipeline("sigma_anbn_demo"),
                                   oracle(Language::SigmaAnbn), 8);
  EXPECT_FALSE(m.empty());
}

TEST(DecideProperty, PositiveScalingPreservesDecisions) {
  Rng rng(31);
  const EncoderPtr enc = build_sqrnn_anbn_counters().encoder;
  const auto xs = strings_up_to({'a', 'b'}, 8);
  for (int trial = 0; trial < 20; ++trial) {
    RatVec w(enc->readout_dim());
    for (auto& v : w) v = ref::q(rng.range(-3, 3), rng.range(1, 2));
    const Rat b = ref::q(rng.range(-4, 4), 2);
    const Rat s = ref::q(rng.range(1, 9), rng.range(1, 9));
    const LinearThresholdDecoder d{w, b};
    RatVec sw = w;
    for (auto& v : sw) v *= s;
    const LinearThresholdDecoder ds{sw, s * b};
    for (const auto& x : xs) ASSERT_EQ(decide(*enc, d, x), decide(*enc, ds, x)) << x;
  }
}

TEST(DecideProperty, Deterministic) {
  const Pipeline p = named_pipeline("slstm_anbn_sigma");
  for (const auto& x : strings_up_to({'a', 'b'}, 8)) ASSERT_EQ(decide(p, x), decide(p, x));
}

TEST(NamedPipelines, AllResolve) {
  for (const auto& name : pipeline_names()) {
    const Pipeline p = named_pipeline(name);
    EXPECT_EQ(decoder_arity(p.decoder), p.encoder->readout_dim()) << name;
  }
  EXPECT_EQ(error_kind([] { named_pipeline("nope"); }), "UnknownName");
}

}  // namespace
}  // namespace rrlab
