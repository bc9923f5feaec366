#include <gtest/gtest.h>

#include "reference.hpp"
#include "rrlab/constructions.hpp"
#include "rrlab/profiler.hpp"

namespace rrlab {
namespace {

using ref::error_kind;

TEST(Classify, Examples) {
  EXPECT_EQ(classify_growth(std::vector<std::size_t>{3, 3, 3, 3, 3, 3}), GrowthClass::Constant);
  EXPECT_EQ(classify_growth(std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7}),
            GrowthClass::Polynomial);
  EXPECT_EQ(classify_growth(std::vector<std::size_t>{2, 4, 8, 16, 32, 64}),
            GrowthClass::Exponential);
  EXPECT_EQ(error_kind([] { classify_growth(std::vector<std::size_t>{1, 2}); }),
            "InsufficientData");
}

TEST(Profile, CountsAreMonotone) {
  for (const char* name : {"slstm_f0", "srnn_generic", "attention_equal_counts"}) {
    const auto p = count_configs(*named_encoder(name), 10);
    ASSERT_EQ(p.counts.size(), 10u);
    for (std::size_t i = 1; i < p.counts.size(); ++i) EXPECT_GE(p.counts[i], p.counts[i - 1]);
  }
}

TEST(Profile, EnumerationCap) {
  EXPECT_EQ(error_kind([] { count_configs(*named_encoder("binary_wfa"), 30, 1000); }),
            "EnumerationCap");
}

struct Tier {
  const char* encoder;
  GrowthClass expected;
  friend void PrintTo(const Tier& t, std::ostream* os) { *os << t.encoder; }
};

class SpaceTiers : public ::testing::TestWithParam<Tier> {};

TEST_P(SpaceTiers, ClassifiedAtLength14) {
  const auto p = count_configs(*named_encoder(GetParam().encoder), 14);
  EXPECT_EQ(classify_growth(p), GetParam().expected) << to_json(p, classify_growth(p)).dump();
}

INSTANTIATE_TEST_SUITE_P(
    Encoders, SpaceTiers,
    ::testing::Values(Tier{"srnn_generic", GrowthClass::Constant},
                      Tier{"sgru_generic", GrowthClass::Constant},
                      Tier{"slstm_f0", GrowthClass::Polynomial},
                      Tier{"sqrnn_anbn_counters", GrowthClass::Polynomial},
                      Tier{"attention_equal_counts", GrowthClass::Polynomial},
                      Tier{"binary_wfa", GrowthClass::Exponential},
                      Tier{"stack_binary", GrowthClass::Exponential}),
    [](const auto& info) { return std::string(info.param.encoder); });

TEST(Profile, JsonShape) {
  const auto p = count_configs(*named_encoder("stack_binary"), 6);
  const auto j = to_json(p, classify_growth(p));
  EXPECT_EQ(j["counts"], nlohmann::json({2, 4, 8, 16, 32, 64}));
  EXPECT_EQ(j["exact_counts"], nlohmann::json({2, 4, 8, 16, 32, 64}));
  EXPECT_EQ(j["class"], "exponential");
}

}  // namespace
}  // namespace rrlab
