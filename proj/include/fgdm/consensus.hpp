#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fgdm/error.hpp"
#include "fgdm/fuzzy.hpp"

namespace fgdm::consensus {

inline constexpr double kHighThreshold = 7.0;
inline constexpr double kMediumThreshold = 4.0;

enum class Level { low, medium, high };

inline std::string_view to_string(Level level) {
  switch (level) {
    case Level::low: return "low";
    case Level::medium: return "medium";
    case Level::high: return "high";
  }
  return "low";
}

inline Level classify(double mean) {
  if (mean >= kHighThreshold) return Level::high;
  if (mean >= kMediumThreshold) return Level::medium;
  return Level::low;
}

struct FeedbackEntry {
  std::string participant;
  double agreement = 0.0;
  double confidence = 0.0;
  double value = 0.0;
};

struct ConsensusReport {
  double iqr = 0.0;
  double mean = 0.0;
  Level level = Level::low;
};

/// Feedback engine output for an (agreement, confidence) pair, inputs clamped.
inline double feedback_value(const fuzzy::InferenceEngine& engine, double agreement, double confidence) {
  if (!std::isfinite(agreement) || !std::isfinite(confidence)) {
    fail(ErrorCode::validation, "agreement and confidence must be finite");
  }
  if (engine.inputs().size() != 2) fail(ErrorCode::validation, "feedback engine needs exactly two inputs");
  return engine.infer({{engine.inputs()[0].name(), agreement}, {engine.inputs()[1].name(), confidence}});
}

/// Linear-interpolation quantile of sorted data at position q * (n - 1).
inline double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline ConsensusReport consensus(std::vector<double> values) {
  if (values.size() < 2) fail(ErrorCode::validation, "consensus needs at least two feedback values");
  for (double v : values) {
    if (!std::isfinite(v)) fail(ErrorCode::validation, "feedback value is not finite");
  }
  std::sort(values.begin(), values.end());
  ConsensusReport r;
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  r.iqr = quantile(values, 0.75) - quantile(values, 0.25);
  r.level = classify(r.mean);
  return r;
}

inline nlohmann::json to_json(const ConsensusReport& r) {
  auto r4 = [](double x) { return std::round(x * 1e4) / 1e4; };
  return {{"iqr", r4(r.iqr)}, {"mean", r4(r.mean)}, {"level", std::string(to_string(r.level))}};
}

inline nlohmann::json to_json(const FeedbackEntry& f) {
  auto r4 = [](double x) { return std::round(x * 1e4) / 1e4; };
  return {{"participant_id", f.participant},
          {"agreement", f.agreement},
          {"confidence", f.confidence},
          {"feedback_value", r4(f.value)}};
}

}  // namespace fgdm::consensus
