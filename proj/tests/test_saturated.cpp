#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "reference.hpp"
#include "rrlab/constructions.hpp"
#include "rrlab/hankel.hpp"
#include "rrlab/saturated.hpp"
#include "rrlab/strings.hpp"

namespace rrlab {
namespace {

using ref::error_kind;

const Alphabet kAb{'a', 'b'};
constexpr std::uint64_t kSeed = 0xfeed;

std::string key(const RatVec& v) {
  std::string s;
  for (const auto& r : v) s += r.get_str() + ",";
  return s;
}

TEST(Activations, SaturatedLimits) {
  EXPECT_EQ(sat_sigmoid(Rat(-3)), 0);
  EXPECT_EQ(sat_sigmoid(Rat(1, 1000)), 1);
  EXPECT_EQ(sat_sigmoid(Rat(0)), Rat(1, 2));
  EXPECT_EQ(sat_tanh(Rat(-1, 7)), -1);
  EXPECT_EQ(sat_tanh(Rat(0)), 0);
  EXPECT_EQ(sat_tanh(Rat(9)), 1);
  EXPECT_EQ(relu(Rat(-2)), 0);
  EXPECT_EQ(relu(Rat(5, 3)), Rat(5, 3));
}

TEST(LayerNorm, ExactWhenRational) {
  EXPECT_EQ(layer_norm(RatVec{1, 3}), (RatVec{-1, 1}));
  EXPECT_EQ(layer_norm(RatVec{2, 2, 2}), (RatVec{0, 0, 0}));
  EXPECT_EQ(error_kind([] { layer_norm(RatVec{0, 1, 2}); }), "IrrationalNorm");
}

TEST(Shapes, MismatchedAffineIsRejected) {
  EXPECT_EQ(error_kind([] {
              SRnn(Embedding::one_hot(kAb), Affine{RatMatrix(2, 3), RatMatrix(2, 2), RatVec(2)});
            }),
            "ShapeMismatch");
  EXPECT_EQ(error_kind([] { Embedding(kAb, {RatVec{1}}); }), "ShapeMismatch");
}

TEST(SRnnProperty, FinitelyManyStates) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    Rng rng(derive_seed(kSeed, 1, i));
    const std::size_t k = 2 + rng.below(2);
    for (const EncoderPtr& net : {EncoderPtr(random_generic_srnn(rng, k)),
                                 EncoderPtr(random_generic_sgru(rng, k))}) {
      std::set<std::string> seen;
      walk_strings(
          kAb, 10, net->initial(), [&](const StateVec& s, char c) { return net->step(s, c); },
          [&](std::string_view, const StateVec& s) {
            for (const auto& v : s) {
              ASSERT_TRUE(v == -1 || v == 0 || v == 1);
            }
            seen.insert(key(s));
          });
      EXPECT_LE(seen.size(), static_cast<std::size_t>(std::pow(3, k))) << net->name();
    }
  }
}

TEST(SLstmProperty, GenericMemoryIsIntegerAndLinearlyBounded) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    Rng rng(derive_seed(kSeed, 2, i));
    const auto net = random_generic_slstm(rng, 3);
    walk_strings(
        kAb, 10, net->initial(), [&](const StateVec& s, char c) { return net->step(s, c); },
        [&](std::string_view x, const StateVec& s) {
          for (const auto& c : net->memory(s)) {
            ASSERT_TRUE(is_integer(c)) << x;
            ASSERT_LE(abs(c), Rat(x.size())) << x;
          }
        });
  }
}

TEST(SQrnnProperty, GenericMemoryIsIntegerAndLinearlyBounded) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    Rng rng(derive_seed(kSeed, 3, i));
    const auto net = random_generic_sqrnn(rng, 1 + rng.below(3), 3);
    walk_strings(
        kAb, 10, net->initial(), [&](const StateVec& s, char c) { return net->step(s, c); },
        [&](std::string_view x, const StateVec& s) {
          for (const auto& c : net->memory(s, 0)) {
            ASSERT_TRUE(is_integer(c)) << x;
            ASSERT_LE(abs(c), Rat(x.size())) << x;
          }
        });
  }
}

TEST(SLstm, F0Construction) {
  const auto net = build_slstm_f0();
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const std::string x = std::string(i, 'a') + std::string(j, 'b');
      ASSERT_EQ(net->memory(run(*net, x))[0], Rat(std::max(i - j, 0))) << x;
    }
}

TEST(SQrnn, WindowOneCounter) {
  const auto net = std::dynamic_pointer_cast<const SQrnn>(build_l_leq_pipeline().encoder);
  ASSERT_TRUE(net);
  for (const auto& x : strings_up_to(kAb, 8)) {
    ASSERT_EQ(net->memory(run(*net, x), 0)[0], Rat(ref::diff_ab(x))) << x;
  }
}

TEST(SuffixAttack, PairExamples) {
  const auto [w1, w2] = suffix_attack_pair(2);
  EXPECT_EQ(w1.size(), 72u);
  EXPECT_EQ(w2.size(), 72u);
  EXPECT_TRUE(ref::in_language(Language::AnbnSigma, w1));
  EXPECT_FALSE(ref::in_language(Language::AnbnSigma, w2));
  EXPECT_EQ(error_kind([] { suffix_attack_pair(0); }), "InvalidArgument");
}

TEST(SuffixAttackProperty, WindowMultisetsAgree) {
  for (std::size_t w = 1; w <= 6; ++w) {
    const auto [w1, w2] = suffix_attack_pair(w);
    ASSERT_EQ(w1.size(), w2.size());
    // Every window the network can see, including the zero-padded ones at the start.
    std::map<std::string, int> m1, m2;
    const std::string pad(w - 1, '#');
    const std::string p1 = pad + w1, p2 = pad + w2;
    for (std::size_t t = 0; t + w <= p1.size(); ++t) {
      ++m1[p1.substr(t, w)];
      ++m2[p2.substr(t, w)];
    }
    EXPECT_EQ(m1, m2) << "window " << w;
  }
}

TEST(SuffixAttackProperty, GenericQrnnsCannotSeparateThePair) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng(derive_seed(kSeed, 4, i));
    const auto net = random_generic_sqrnn(rng, 2, 3);
    ASSERT_TRUE(suffix_attack_check(*net, 2)) << "trial " << i;
  }
}

TEST(SuffixAttack, ConstructionAndDegenerateNets) {
  const auto counters = std::dynamic_pointer_cast<const SQrnn>(build_sqrnn_anbn_counters().encoder);
  ASSERT_TRUE(counters);
  EXPECT_TRUE(suffix_attack_check(*counters, 2));
  EXPECT_TRUE(suffix_attack_check(*zero_sqrnn(2, 3), 2));
}

TEST(Stack, BinaryEncoding) {
  const auto net = build_stack_binary();
  EXPECT_EQ(encode(*net, "101")[0], Rat(5, 4));
  for (std::size_t n = 1; n <= 12; ++n) {
    std::set<std::string> seen;
    for (const auto& x : strings_of_length(net->alphabet(), n)) seen.insert(key(encode(*net, x)));
    EXPECT_EQ(seen.size(), std::size_t{1} << n);
  }
}

TEST(Stack, GeometricEncoding) {
  const auto net = build_stack_geometric();
  EXPECT_EQ(encode(*net, "a")[0], 1);
  EXPECT_EQ(encode(*net, "")[0], 0);
  for (unsigned n = 1; n <= 10; ++n) {
    // 2 - 2^(1-n)
    EXPECT_EQ(encode(*net, std::string(n, 'a'))[0], 2 - ref::q(2, 1L << n));
  }
  EXPECT_EQ(encode(*net, "aab")[0], 1);
  EXPECT_EQ(encode(*net, "b")[0], 0);
}

TEST(Stack, GeometricOracleHasUnboundedRank) {
  std::size_t prev = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const std::size_t r = unbounded_rank_witness(stack_geometric_oracle(), n);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(Attention, EqualCountsIndicator) {
  const auto net = build_attention_equal_counts();
  EXPECT_EQ(encode(*net, "")[0], 0);
  for (const auto& x : strings_up_to(kAb, 10)) {
    const Rat out = encode(*net, x)[0];
    ASSERT_TRUE(out == 0 || out == 1);
    ASSERT_EQ(out == 1, ref::diff_ab(x) != 0) << x;
  }
}

TEST(AttentionProperty, ConfigurationCountBound) {
  const auto net = build_attention_equal_counts();
  const std::size_t pairs = net->pair_count();
  EXPECT_EQ(pairs, 2u);
  for (std::size_t n = 1; n <= 10; ++n) {
    std::set<std::string> seen;
    for (const auto& x : strings_of_length(kAb, n)) seen.insert(key(net->configuration(run(*net, x))));
    const double bound = std::pow(static_cast<double>(n), static_cast<double>(pairs));
    EXPECT_LE(seen.size(), static_cast<std::size_t>(std::pow(n + 1, pairs)));
    if (n >= 2) {
      EXPECT_LE(static_cast<double>(seen.size()), bound) << "n=" << n;
    }
  }
}

TEST(NetJson, RoundTripsEveryNamedNet) {
  for (const auto& name : encoder_names()) {
    const EncoderPtr net = named_encoder(name);
    if (name == "binary_wfa" || name == "spectral_anbn" || name == "f0_cm") {
      EXPECT_EQ(error_kind([&] { net_to_json(*net); }), "FormatError");
      continue;
    }
    const auto j = net_to_json(*net);
    const EncoderPtr back = net_from_json(j);
    EXPECT_EQ(net_to_json(*back), j) << name;
    walk_strings(
        net->alphabet(), 6, 0, [](int, char) { return 0; },
        [&](std::string_view x, int) { ASSERT_EQ(run(*back, x), run(*net, x)) << name << " " << x; });
  }
  EXPECT_EQ(error_kind([] { net_from_json({{"type", "cnn"}, {"alphabet", {"a"}}}); }),
            "FormatError");
}

TEST(NamedEncoders, UnknownName) {
  EXPECT_EQ(error_kind([] { named_encoder("transformer"); }), "UnknownName");
}

}  // namespace
}  // namespace rrlab
