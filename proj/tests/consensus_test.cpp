#include <gtest/gtest.h>

#include "fgdm/consensus.hpp"
#include "fgdm/engines.hpp"
#include "test_support.hpp"

namespace {

using namespace fgdm;
using namespace fgdm::consensus;

class Feedback : public ::testing::Test {
 protected:
  fuzzy::InferenceEngine engine = make_feedback_engine();
};

TEST_F(Feedback, ReferenceParticipants) {
  // Reported values are 6.24, 8.44, 6.24 and 8.44.
  EXPECT_NEAR(feedback_value(engine, 5, 7), 6.24, 1.0);
  EXPECT_NEAR(feedback_value(engine, 9, 8), 8.44, 0.5);
  EXPECT_NEAR(feedback_value(engine, 8, 7), 6.24, 1.0);
  EXPECT_NEAR(feedback_value(engine, 10, 10), 8.44, 0.5);
}

TEST_F(Feedback, FrozenValues) {
  EXPECT_NEAR(feedback_value(engine, 5, 7), 5.5952, 1e-3);
  EXPECT_NEAR(feedback_value(engine, 9, 8), 8.3333, 1e-3);
  EXPECT_NEAR(feedback_value(engine, 8, 7), 7.1967, 1e-3);
  EXPECT_NEAR(feedback_value(engine, 10, 10), 8.3333, 1e-3);
  EXPECT_NEAR(feedback_value(engine, 0, 0), 5.0 / 3.0, 1e-2);
}

TEST_F(Feedback, Ordering) {
  EXPECT_LT(feedback_value(engine, 5, 7), feedback_value(engine, 8, 7));
  EXPECT_LE(feedback_value(engine, 8, 7), feedback_value(engine, 9, 8));
  EXPECT_LT(feedback_value(engine, 0, 0), feedback_value(engine, 5, 5));
}

TEST_F(Feedback, SymmetricAndMonotoneOnGrid) {
  // 101 x 101 points over [0, 10]^2.
  std::vector<std::vector<double>> g(101, std::vector<double>(101));
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) g[i][j] = feedback_value(engine, i / 10.0, j / 10.0);
  }
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      ASSERT_NEAR(g[i][j], g[j][i], 1e-9) << i << "," << j;
      if (i > 0) {
        ASSERT_GE(g[i][j], g[i - 1][j] - 1e-9) << i << "," << j;
      }
      if (j > 0) {
        ASSERT_GE(g[i][j], g[i][j - 1] - 1e-9) << i << "," << j;
      }
      ASSERT_GE(g[i][j], 0.0);
      ASSERT_LE(g[i][j], 10.0);
    }
  }
}

TEST_F(Feedback, RejectsNonFinite) {
  EXPECT_THROW(feedback_value(engine, std::nan(""), 5), Error);
  EXPECT_THROW(feedback_value(engine, 5, INFINITY), Error);
}

TEST(Consensus, ReferenceValues) {
  const auto r = fgdm::consensus::consensus({6.24, 8.44, 6.24, 8.44});
  EXPECT_NEAR(r.mean, 7.34, 1e-9);
  EXPECT_NEAR(r.iqr, 2.2, 1e-9);
  EXPECT_EQ(r.level, Level::high);
}

TEST(Consensus, LinearInterpolationQuartiles) {
  // Sorted 1,2,3,4: Q1 at position 0.75, Q3 at 2.25.
  const auto r = fgdm::consensus::consensus({4, 1, 3, 2});
  EXPECT_NEAR(r.iqr, 3.25 - 1.75, 1e-12);
  EXPECT_NEAR(quantile({1, 2, 3, 4, 5}, 0.25), 2.0, 1e-12);
  EXPECT_NEAR(quantile({1, 2, 3, 4, 5}, 0.75), 4.0, 1e-12);
  EXPECT_EQ(fgdm::consensus::consensus({5, 5, 5}).iqr, 0.0);
}

TEST(Consensus, Thresholds) {
  EXPECT_EQ(classify(7.0), Level::high);
  EXPECT_EQ(classify(6.9999), Level::medium);
  EXPECT_EQ(classify(4.0), Level::medium);
  EXPECT_EQ(classify(3.9999), Level::low);
  EXPECT_EQ(classify(0.0), Level::low);
  EXPECT_EQ(to_string(Level::medium), "medium");
}

TEST(Consensus, NeedsTwoFiniteValues) {
  EXPECT_THROW(fgdm::consensus::consensus({}), Error);
  EXPECT_THROW(fgdm::consensus::consensus({7.0}), Error);
  EXPECT_THROW(fgdm::consensus::consensus({7.0, std::nan("")}), Error);
}

TEST(Consensus, ReferenceSessionIsHigh) {
  const auto engine = make_feedback_engine();
  const auto fb = fixtures::parse_feedback(fixtures::read_json_file(test::source_path("fixtures/hotels/feedback.json")));
  std::vector<double> values;
  for (const auto& f : fb) values.push_back(feedback_value(engine, f.agreement, f.confidence));
  const auto r = fgdm::consensus::consensus(values);
  EXPECT_EQ(r.level, Level::high);
  EXPECT_NEAR(r.mean, 7.3648, 1e-3);
}

TEST(Consensus, JsonShape) {
  const auto j = to_json(fgdm::consensus::consensus({6.24, 8.44, 6.24, 8.44}));
  EXPECT_EQ(j.at("level"), "high");
  EXPECT_EQ(j.at("mean"), 7.34);
  EXPECT_EQ(j.at("iqr"), 2.2);
}

TEST(FeedbackInput, RangeChecked) {
  using nlohmann::json;
  EXPECT_THROW(fixtures::parse_feedback(json::parse(R"([{"participant_id": "a", "agreement": 11, "confidence": 5}])")),
               Error);
  EXPECT_THROW(fixtures::parse_feedback(json::parse(R"([{"participant_id": "a", "agreement": 5}])")), Error);
  EXPECT_EQ(fixtures::parse_feedback(json::parse(R"([{"participant_id": "a", "agreement": 5, "confidence": 0}])")).size(),
            1u);
}

}  // namespace
