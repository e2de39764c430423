#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgdm/error.hpp"
#include "fgdm/fuzzy.hpp"
#include "fgdm/signals.hpp"
#include "fgdm/voting.hpp"

namespace fgdm {

/// Rounds to 4 decimals so serialized numbers stay diff-stable.
inline double round4(double x) {
  const double r = std::round(x * 1e4) / 1e4;
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

struct AlternativeResult {
  std::string id;
  double voting = 0.0;            // collective score in [0, 100]
  double avg_sentiment = 0.0;
  double avg_emotion = 0.0;
  double total_sentiment = 0.0;   // fused, in [-1, 1]
  double fuzzy = 0.0;             // engine output in [0, 10]
  int rank = 0;
};

struct DecisionReport {
  std::vector<AlternativeResult> results;  // rank order
  std::string winner;
  std::string engine_fingerprint;
  std::string defuzzifier;
};

/// Fuzzy scores closer than this rank as tied.
inline constexpr double kRankResolution = 1e-6;

/// Sorts by fuzzy score descending, then voting score descending, then id,
/// and assigns ranks 1..n.
inline std::vector<AlternativeResult> rank(std::vector<AlternativeResult> results) {
  auto level = [](double fuzzy) { return std::llround(fuzzy / kRankResolution); };
  std::sort(results.begin(), results.end(), [&](const AlternativeResult& a, const AlternativeResult& b) {
    if (level(a.fuzzy) != level(b.fuzzy)) return level(a.fuzzy) > level(b.fuzzy);
    if (a.voting != b.voting) return a.voting > b.voting;
    return a.id < b.id;
  });
  for (std::size_t i = 0; i < results.size(); ++i) results[i].rank = static_cast<int>(i) + 1;
  return results;
}

struct PipelineInput {
  std::vector<voting::AlternativeProfile> alternatives;
  std::vector<voting::FeatureSpec> features = voting::hotel_feature_specs();
  std::vector<voting::ExpertPreferenceVector> stances;
  signals::DiscussionSignals discussion;
  signals::FusionWeights weights;
};

struct PipelineOutput {
  voting::PreferenceMatrix matrix;
  DecisionReport report;
};

inline PipelineOutput evaluate(const PipelineInput& in, const fuzzy::InferenceEngine& engine) {
  if (in.alternatives.empty()) fail(ErrorCode::validation, "no alternatives");
  signals::validate(in.weights);
  PipelineOutput out;
  out.matrix = voting::build_preference_matrix(in.alternatives, in.features, in.stances);

  if (engine.inputs().size() != 2) fail(ErrorCode::validation, "decision engine needs exactly two inputs");
  const std::string& voting_var = engine.inputs()[0].name();
  const std::string& sentiment_var = engine.inputs()[1].name();

  std::vector<AlternativeResult> results;
  for (std::size_t i = 0; i < in.alternatives.size(); ++i) {
    const auto& id = in.alternatives[i].id;
    const auto sig = in.discussion.find(id);
    if (sig == in.discussion.end() || sig->second.empty()) {
      fail(ErrorCode::validation, "no discussion signal for alternative '" + id + "'");
    }
    const auto agg = signals::aggregate_signals(sig->second);
    AlternativeResult r;
    r.id = id;
    r.voting = out.matrix.collective[i];
    r.avg_sentiment = agg.sentiment;
    r.avg_emotion = agg.emotion;
    r.total_sentiment = signals::total_sentiment(agg.sentiment, agg.emotion, in.weights);
    r.fuzzy = engine.infer({{voting_var, r.voting}, {sentiment_var, r.total_sentiment}});
    results.push_back(std::move(r));
  }
  for (const auto& [alt, _] : in.discussion) {
    if (std::none_of(in.alternatives.begin(), in.alternatives.end(),
                     [&](const auto& a) { return a.id == alt; })) {
      fail(ErrorCode::validation, "discussion signal for unknown alternative '" + alt + "'");
    }
  }

  out.report.results = rank(std::move(results));
  out.report.winner = out.report.results.front().id;
  out.report.engine_fingerprint = fuzzy::fingerprint(engine);
  out.report.defuzzifier =
      engine.operators().defuzzifier == fuzzy::Defuzzifier::centroid ? "centroid" : "mom";
  return out;
}

inline DecisionReport run_pipeline(const PipelineInput& in, const fuzzy::InferenceEngine& engine) {
  return evaluate(in, engine).report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const AlternativeResult& r) {
  return {{"alternative", r.id},
          {"rank", r.rank},
          {"voting_score", round4(r.voting)},
          {"avg_sentiment", round4(r.avg_sentiment)},
          {"avg_emotion", round4(r.avg_emotion)},
          {"total_sentiment", round4(r.total_sentiment)},
          {"fuzzy_score", round4(r.fuzzy)}};
}

inline nlohmann::json to_json(const DecisionReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.results) rows.push_back(to_json(r));
  return {{"winner", report.winner},
          {"engine_fingerprint", report.engine_fingerprint},
          {"defuzzifier", report.defuzzifier},
          {"results", rows}};
}

inline DecisionReport report_from_json(const nlohmann::json& j) {
  DecisionReport r;
  r.winner = j.at("winner").get<std::string>();
  r.engine_fingerprint = j.at("engine_fingerprint").get<std::string>();
  r.defuzzifier = j.at("defuzzifier").get<std::string>();
  for (const auto& row : j.at("results")) {
    AlternativeResult a;
    a.id = row.at("alternative").get<std::string>();
    a.rank = row.at("rank").get<int>();
    a.voting = row.at("voting_score").get<double>();
    a.avg_sentiment = row.at("avg_sentiment").get<double>();
    a.avg_emotion = row.at("avg_emotion").get<double>();
    a.total_sentiment = row.at("total_sentiment").get<double>();
    a.fuzzy = row.at("fuzzy_score").get<double>();
    r.results.push_back(std::move(a));
  }
  return r;
}

inline nlohmann::json to_json(const voting::PreferenceMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t p = 0; p < m.participants.size(); ++p) {
    nlohmann::json raw = nlohmann::json::object(), scaled = nlohmann::json::object();
    for (std::size_t a = 0; a < m.alternatives.size(); ++a) {
      raw[m.alternatives[a]] = m.raw[p][a];
      scaled[m.alternatives[a]] = round4(m.scaled[p][a]);
    }
    rows.push_back({{"participant", m.participants[p]}, {"raw", raw}, {"scaled", scaled}});
  }
  return {{"feature_count", m.feature_count}, {"alternatives", m.alternatives}, {"participants", rows}};
}

inline nlohmann::json collective_to_json(const voting::PreferenceMatrix& m) {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t a = 0; a < m.alternatives.size(); ++a) j[m.alternatives[a]] = round4(m.collective[a]);
  return j;
}

namespace detail {

inline std::string fixed(double x, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, round4(x));
  return buf;
}

inline std::string pad(std::string s, std::size_t width, bool right = true) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

}  // namespace detail

/// Plain-text table: emotion, sentiment, fused, voting, fuzzy score, rank.
inline std::string format_table(const DecisionReport& report) {
  using detail::fixed;
  using detail::pad;
  std::size_t idw = 11;
  for (const auto& r : report.results) idw = std::max(idw, r.id.size());
  std::ostringstream os;
  os << pad("alternative", idw, false) << "  " << pad("emotion", 8) << "  " << pad("sentiment", 9) << "  "
     << pad("total", 8) << "  " << pad("voting", 8) << "  " << pad("fuzzy", 7) << "  " << pad("rank", 4) << '\n';
  os << std::string(idw + 2 + 8 + 2 + 9 + 2 + 8 + 2 + 8 + 2 + 7 + 2 + 4, '-') << '\n';
  for (const auto& r : report.results) {
    os << pad(r.id, idw, false) << "  " << pad(fixed(r.avg_emotion, 4), 8) << "  "
       << pad(fixed(r.avg_sentiment, 4), 9) << "  " << pad(fixed(r.total_sentiment, 4), 8) << "  "
       << pad(fixed(r.voting, 4), 8) << "  " << pad(fixed(r.fuzzy, 4), 7) << "  "
       << pad(std::to_string(r.rank), 4) << '\n';
  }
  os << "winner: " << report.winner << "  (engine " << report.engine_fingerprint << ", " << report.defuzzifier
     << ")\n";
  return os.str();
}

inline std::string format_table(const voting::PreferenceMatrix& m) {
  using detail::fixed;
  using detail::pad;
  std::ostringstream os;
  std::size_t pw = 11;
  for (const auto& p : m.participants) pw = std::max(pw, p.size());
  std::size_t cw = 8;
  for (const auto& a : m.alternatives) cw = std::max(cw, a.size());
  auto header = [&](const char* title) {
    os << title << '\n' << pad("participant", pw, false);
    for (const auto& a : m.alternatives) os << "  " << pad(a, cw);
    os << '\n';
  };
  header("raw preference");
  for (std::size_t p = 0; p < m.participants.size(); ++p) {
    os << pad(m.participants[p], pw, false);
    for (int v : m.raw[p]) os << "  " << pad(std::to_string(v), cw);
    os << '\n';
  }
  os << '\n';
  header("scaled preference");
  for (std::size_t p = 0; p < m.participants.size(); ++p) {
    os << pad(m.participants[p], pw, false);
    for (double v : m.scaled[p]) os << "  " << pad(fixed(v, 4), cw);
    os << '\n';
  }
  os << pad("collective", pw, false);
  for (double v : m.collective) os << "  " << pad(fixed(v, 4), cw);
  os << '\n';
  return os.str();
}

}  // namespace fgdm
