#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace {

using namespace fgdm;
using namespace fgdm::voting;

// Frozen from an independent script over the reference fixtures.
constexpr int kRaw[4][7] = {
    {0, 1, 1, 0, 1, -2, -1},
    {3, 2, 4, 3, 4, 2, 2},
    {0, 2, 2, 1, 1, 0, 0},
    {2, 2, 3, 3, 3, 2, 2},
};
constexpr double kCollective[7] = {57.8125, 60.9375, 65.625, 60.9375, 64.0625, 53.125, 54.6875};

class ReferenceVoting : public ::testing::Test {
 protected:
  std::vector<AlternativeProfile> alts = test::reference_alternatives();
  std::vector<ExpertPreferenceVector> experts = test::reference_stances();
  std::vector<FeatureSpec> specs = hotel_feature_specs();
};

TEST_F(ReferenceVoting, FeatureMeans) {
  const auto means = feature_means(alts, specs);
  EXPECT_NEAR(means.at("price_per_week"), 1021.43, 0.01);
  EXPECT_NEAR(means.at("rating"), 8.257, 0.001);
  EXPECT_NEAR(means.at("room_area"), 48.0, 1e-12);
  EXPECT_NEAR(means.at("star"), 3.1429, 1e-4);
  EXPECT_NEAR(means.at("city_minutes"), 32.714, 1e-3);
  EXPECT_EQ(means.count("pool"), 0u);
}

TEST_F(ReferenceVoting, WeightsOfLuxuryHotel) {
  const auto w = feature_weights(alts[4], specs, feature_means(alts, specs));
  EXPECT_EQ(w.at("price_per_week"), 0.0);
  EXPECT_EQ(w.at("rating"), 1.0);
  EXPECT_EQ(w.at("meal_type"), 1.0);
  EXPECT_EQ(w.at("room_area"), 1.0);
  EXPECT_EQ(w.at("star"), 1.0);
  EXPECT_EQ(w.at("beach_access"), 1.0);
  EXPECT_EQ(w.at("city_minutes"), 1.0);
  EXPECT_EQ(w.at("pool"), 1.0);
}

TEST_F(ReferenceVoting, WeightsOfBudgetHotel) {
  const auto w = feature_weights(alts[1], specs, feature_means(alts, specs));
  EXPECT_EQ(w.at("price_per_week"), 1.0);
  EXPECT_EQ(w.at("rating"), 1.0);
  EXPECT_EQ(w.at("meal_type"), 0.33);
  EXPECT_EQ(w.at("room_area"), 0.0);
  EXPECT_EQ(w.at("star"), 0.0);
  EXPECT_EQ(w.at("beach_access"), 0.0);
  EXPECT_EQ(w.at("city_minutes"), 0.0);
  EXPECT_EQ(w.at("pool"), 0.0);
}

TEST_F(ReferenceVoting, ValueEqualToMeanDoesNotQualify) {
  // room_area averages exactly 48; a hotel sitting on the mean gets 0.
  auto tweaked = alts;
  tweaked[0].values["room_area"] = 48.0;
  tweaked[1].values["room_area"] = 26.0;  // keeps the mean at 48
  ASSERT_NEAR(feature_means(tweaked, specs).at("room_area"), 48.0, 1e-12);
  EXPECT_EQ(feature_weights(tweaked[0], specs, feature_means(tweaked, specs)).at("room_area"), 0.0);
}

TEST_F(ReferenceVoting, RawPreferenceMatrix) {
  const auto m = build_preference_matrix(alts, specs, experts);
  ASSERT_EQ(m.raw.size(), 4u);
  for (int p = 0; p < 4; ++p) {
    for (int a = 0; a < 7; ++a) EXPECT_EQ(m.raw[p][a], kRaw[p][a]) << m.participants[p] << "/" << m.alternatives[a];
  }
}

TEST_F(ReferenceVoting, RawPreferenceExamples) {
  const auto means = feature_means(alts, specs);
  // parp1 on hotel6: all-inclusive meal and a short city ride, both opposed.
  EXPECT_EQ(raw_preference(experts[0], feature_weights(alts[5], specs, means)), -2);
  EXPECT_EQ(raw_preference(experts[1], feature_weights(alts[2], specs, means)), 4);
  EXPECT_EQ(raw_preference(experts[3], feature_weights(alts[1], specs, means)), 2);
}

TEST(RawPreference, RoundsHalfAwayFromZero) {
  const ExpertPreferenceVector up{"p", {{"a", 1}, {"b", 1}}};
  const ExpertPreferenceVector down{"p", {{"a", -1}, {"b", -1}}};
  const WeightMap half{{"a", 1.0}, {"b", 0.5}};
  EXPECT_EQ(raw_preference(up, half), 2);
  EXPECT_EQ(raw_preference(down, half), -2);
  const WeightMap coded{{"a", 0.33}, {"b", 1.0}};
  EXPECT_EQ(raw_preference(up, coded), 1);
}

TEST(RawPreference, RejectsBadStance) {
  const ExpertPreferenceVector e{"p", {{"a", 2}}};
  EXPECT_THROW(raw_preference(e, {{"a", 1.0}}), Error);
  const ExpertPreferenceVector missing{"p", {{"b", 1}}};
  EXPECT_THROW(raw_preference(missing, {{"a", 1.0}}), Error);
}

TEST(ScalePreference, MapsOntoPercent) {
  EXPECT_EQ(scale_preference(-8, 8), 0.0);
  EXPECT_EQ(scale_preference(0, 8), 50.0);
  EXPECT_EQ(scale_preference(8, 8), 100.0);
  EXPECT_EQ(scale_preference(2, 8), 62.5);
  EXPECT_EQ(scale_preference(-3, 8), 31.25);
  EXPECT_THROW(scale_preference(9, 8), Error);
  EXPECT_THROW(scale_preference(0, 0), Error);
}

TEST_F(ReferenceVoting, CollectiveScores) {
  const auto m = build_preference_matrix(alts, specs, experts);
  ASSERT_EQ(m.collective.size(), 7u);
  for (int a = 0; a < 7; ++a) EXPECT_DOUBLE_EQ(m.collective[a], kCollective[a]) << m.alternatives[a];
  EXPECT_DOUBLE_EQ(m.collective_for("hotel3"), 65.625);
  EXPECT_THROW(m.collective_for("hotel9"), Error);
}

TEST(CollectiveMatrix, SkipsEmptyCells) {
  const std::vector<std::vector<std::optional<double>>> cells{{50.0, std::nullopt}, {100.0, 25.0}};
  const auto c = collective_matrix(cells);
  EXPECT_DOUBLE_EQ(c[0], 75.0);
  EXPECT_DOUBLE_EQ(c[1], 25.0);
}

TEST(CollectiveMatrix, Errors) {
  EXPECT_THROW(collective_matrix(std::vector<std::vector<double>>{}), Error);
  EXPECT_THROW(collective_matrix(std::vector<std::vector<double>>{{1.0, 2.0}, {1.0}}), Error);
  const std::vector<std::vector<std::optional<double>>> empty_column{{std::nullopt}, {std::nullopt}};
  EXPECT_THROW(collective_matrix(empty_column), Error);
}

TEST(Profiles, UnknownCategoryIsRejected) {
  const auto specs = hotel_feature_specs();
  AlternativeProfile a{"x", {{"price_per_week", 1.0}, {"rating", 1.0}, {"meal_type", std::string("half_board")},
                             {"room_area", 1.0}, {"star", 1.0}, {"beach_access", 0.0}, {"city_minutes", 1.0},
                             {"pool", 1.0}}};
  EXPECT_THROW(feature_weights(a, specs, feature_means({a}, specs)), Error);
  a.values["meal_type"] = std::string("breakfast");
  a.values["pool"] = 0.5;
  EXPECT_THROW(validate_profile(a, specs), Error);
}

TEST(Specs, Validation) {
  EXPECT_THROW(validate_specs({}), Error);
  EXPECT_THROW(validate_specs({{"a", FeatureKind::continuous, std::nullopt, {}}}), Error);
  EXPECT_THROW(validate_specs({{"a", FeatureKind::binary, Direction::higher_is_better, {}}}), Error);
  EXPECT_THROW(validate_specs({{"a", FeatureKind::coded, std::nullopt, {{"x", 1.5}}}}), Error);
  EXPECT_THROW(validate_specs({{"a", FeatureKind::binary, std::nullopt, {}}, {"a", FeatureKind::binary, std::nullopt, {}}}),
               Error);
}

TEST_F(ReferenceVoting, RandomStancesStayInRange) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> z(-1, 1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ExpertPreferenceVector> random(1 + trial % 6);
    for (std::size_t i = 0; i < random.size(); ++i) {
      random[i].participant_id = "p" + std::to_string(i);
      for (const auto& s : specs) random[i].stances[s.name] = z(rng);
    }
    const auto m = build_preference_matrix(alts, specs, random);
    for (std::size_t p = 0; p < random.size(); ++p) {
      for (std::size_t a = 0; a < alts.size(); ++a) {
        ASSERT_GE(m.raw[p][a], -8);
        ASSERT_LE(m.raw[p][a], 8);
        ASSERT_EQ(m.scaled[p][a], (m.raw[p][a] + 8) / 16.0 * 100.0);
      }
    }
    for (double c : m.collective) {
      ASSERT_GE(c, 0.0);
      ASSERT_LE(c, 100.0);
    }
  }
}

TEST_F(ReferenceVoting, NeutralStancesGiveFifty) {
  ExpertPreferenceVector neutral{"n", {}};
  for (const auto& s : specs) neutral.stances[s.name] = 0;
  const auto m = build_preference_matrix(alts, specs, {neutral});
  for (double c : m.collective) EXPECT_EQ(c, 50.0);
}

TEST_F(ReferenceVoting, ParticipantOrderDoesNotMatter) {
  auto reversed = experts;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_EQ(build_preference_matrix(alts, specs, experts).collective,
            build_preference_matrix(alts, specs, reversed).collective);
}

}  // namespace
