#pragma once

// JSON fixture formats shared by the CLI and the session service.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fgdm/consensus.hpp"
#include "fgdm/error.hpp"
#include "fgdm/signals.hpp"
#include "fgdm/voting.hpp"

namespace fgdm::fixtures {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::validation, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Feature specs
// ---------------------------------------------------------------------------

inline json to_json(const voting::FeatureSpec& s) {
  using voting::FeatureKind;
  json j = {{"name", s.name}};
  switch (s.kind) {
    case FeatureKind::continuous:
      j["kind"] = "continuous";
      j["direction"] = *s.direction == voting::Direction::higher_is_better ? "higher" : "lower";
      break;
    case FeatureKind::binary: j["kind"] = "binary"; break;
    case FeatureKind::coded:
      j["kind"] = "coded";
      j["coding"] = s.coding;
      break;
  }
  return j;
}

inline std::vector<voting::FeatureSpec> parse_feature_specs(const json& doc) {
  if (!doc.is_array()) fail(ErrorCode::validation, "features: expected an array");
  std::vector<voting::FeatureSpec> specs;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& f = doc[i];
    const std::string where = "features[" + std::to_string(i) + "]";
    try {
      voting::FeatureSpec s;
      s.name = f.at("name").get<std::string>();
      const auto kind = f.at("kind").get<std::string>();
      if (kind == "continuous") {
        s.kind = voting::FeatureKind::continuous;
        const auto dir = f.at("direction").get<std::string>();
        if (dir == "higher") {
          s.direction = voting::Direction::higher_is_better;
        } else if (dir == "lower") {
          s.direction = voting::Direction::lower_is_better;
        } else {
          fail(ErrorCode::validation, where + ".direction: expected \"higher\" or \"lower\"");
        }
      } else if (kind == "binary") {
        s.kind = voting::FeatureKind::binary;
      } else if (kind == "coded") {
        s.kind = voting::FeatureKind::coded;
        s.coding = f.at("coding").get<std::map<std::string, double>>();
      } else {
        fail(ErrorCode::validation, where + ".kind: unknown kind '" + kind + "'");
      }
      specs.push_back(std::move(s));
    } catch (const json::exception& e) {
      fail(ErrorCode::validation, where + ": " + e.what());
    }
  }
  voting::validate_specs(specs);
  return specs;
}

// ---------------------------------------------------------------------------
// Alternatives and stances
// ---------------------------------------------------------------------------

inline std::vector<voting::AlternativeProfile> parse_alternatives(const json& doc,
                                                                  const std::vector<voting::FeatureSpec>& specs) {
  if (!doc.is_array() || doc.empty()) fail(ErrorCode::validation, "alternatives: expected a non-empty array");
  std::vector<voting::AlternativeProfile> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& a = doc[i];
    std::string where = "alternatives[" + std::to_string(i) + "]";
    if (!a.is_object()) fail(ErrorCode::validation, where + ": expected an object");
    voting::AlternativeProfile p;
    if (a.contains("id")) {
      const auto& id = a["id"];
      p.id = id.is_string() ? id.get<std::string>() : id.dump();
    } else {
      p.id = "alt" + std::to_string(i + 1);
    }
    where += " (" + p.id + ")";
    if (!ids.insert(p.id).second) fail(ErrorCode::validation, where + ": duplicate id");
    for (const auto& s : specs) {
      if (!a.contains(s.name)) fail(ErrorCode::validation, where + ": missing field '" + s.name + "'");
      const auto& v = a[s.name];
      if (s.kind == voting::FeatureKind::coded) {
        if (!v.is_string()) fail(ErrorCode::validation, where + "." + s.name + ": expected a category string");
        p.values[s.name] = v.get<std::string>();
      } else {
        if (!v.is_number()) fail(ErrorCode::validation, where + "." + s.name + ": expected a number");
        p.values[s.name] = v.get<double>();
      }
    }
    try {
      voting::validate_profile(p, specs);
      voting::feature_weights(p, specs, voting::feature_means({p}, specs));  // category check
    } catch (const Error& e) {
      fail(ErrorCode::validation, where + ": " + e.what());
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline json to_json(const voting::AlternativeProfile& p) {
  json j = {{"id", p.id}};
  for (const auto& [k, v] : p.values) {
    if (const double* d = std::get_if<double>(&v)) {
      j[k] = *d;
    } else {
      j[k] = std::get<std::string>(v);
    }
  }
  return j;
}

inline voting::ExpertPreferenceVector parse_stance_vector(const json& entry, const std::vector<voting::FeatureSpec>& specs,
                                                          const std::string& where) {
  voting::ExpertPreferenceVector e;
  try {
    e.participant_id = entry.at("participant_id").is_string() ? entry.at("participant_id").get<std::string>()
                                                              : entry.at("participant_id").dump();
    const auto& st = entry.at("stances");
    if (!st.is_object()) fail(ErrorCode::validation, where + ".stances: expected an object");
    for (const auto& [feature, z] : st.items()) {
      const std::string field = where + " participant '" + e.participant_id + "' feature '" + feature + "'";
      if (!z.is_number_integer() || z.get<long long>() < -1 || z.get<long long>() > 1) {
        fail(ErrorCode::validation, field + ": stance must be -1, 0 or 1, got " + z.dump());
      }
      if (std::none_of(specs.begin(), specs.end(), [&](const auto& s) { return s.name == feature; })) {
        fail(ErrorCode::validation, field + ": unknown feature");
      }
      e.stances[feature] = z.get<int>();
    }
  } catch (const json::exception& ex) {
    fail(ErrorCode::validation, where + ": " + ex.what());
  }
  for (const auto& s : specs) {
    if (!e.stances.count(s.name)) {
      fail(ErrorCode::validation, where + " participant '" + e.participant_id + "': missing stance on '" + s.name + "'");
    }
  }
  return e;
}

inline std::vector<voting::ExpertPreferenceVector> parse_stances(const json& doc,
                                                                const std::vector<voting::FeatureSpec>& specs) {
  if (!doc.is_array() || doc.empty()) fail(ErrorCode::validation, "stances: expected a non-empty array");
  std::vector<voting::ExpertPreferenceVector> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto e = parse_stance_vector(doc[i], specs, "stances[" + std::to_string(i) + "]");
    if (!seen.insert(e.participant_id).second) {
      fail(ErrorCode::validation, "stances: participant '" + e.participant_id + "' appears twice");
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline json to_json(const voting::ExpertPreferenceVector& e) {
  return {{"participant_id", e.participant_id}, {"stances", e.stances}};
}

// ---------------------------------------------------------------------------
// Feedback
// ---------------------------------------------------------------------------

struct FeedbackInput {
  std::string participant;
  double agreement = 0.0;
  double confidence = 0.0;
};

inline std::vector<FeedbackInput> parse_feedback(const json& doc) {
  if (!doc.is_array()) fail(ErrorCode::validation, "feedback: expected an array");
  std::vector<FeedbackInput> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = "feedback[" + std::to_string(i) + "]";
    try {
      const auto& f = doc[i];
      FeedbackInput in;
      in.participant = f.at("participant_id").is_string() ? f.at("participant_id").get<std::string>()
                                                          : f.at("participant_id").dump();
      in.agreement = f.at("agreement").get<double>();
      in.confidence = f.at("confidence").get<double>();
      for (const auto& [name, v] : {std::pair{"agreement", in.agreement}, std::pair{"confidence", in.confidence}}) {
        if (!(v >= 0.0 && v <= 10.0)) {
          fail(ErrorCode::validation, where + "." + name + ": must lie in [0, 10]");
        }
      }
      out.push_back(std::move(in));
    } catch (const json::exception& e) {
      fail(ErrorCode::validation, where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace fgdm::fixtures
