#pragma once

// Criterion-stance voting: feature weights from mean-threshold binarization,
// per-expert preference sums, 0..100 scaling and the collective row.

#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fgdm/error.hpp"

namespace fgdm::voting {

enum class FeatureKind { continuous, binary, coded };
enum class Direction { higher_is_better, lower_is_better };

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::continuous;
  std::optional<Direction> direction;      // continuous only
  std::map<std::string, double> coding;    // coded only: category -> coefficient
};

using FeatureValue = std::variant<double, std::string>;

struct AlternativeProfile {
  std::string id;
  std::map<std::string, FeatureValue> values;
};

struct ExpertPreferenceVector {
  std::string participant_id;
  std::map<std::string, int> stances;  // each in {-1, 0, 1}
};

using WeightMap = std::map<std::string, double>;

/// The eight hotel criteria used by the reference experiment.
inline std::vector<FeatureSpec> hotel_feature_specs() {
  using enum FeatureKind;
  return {
      {"price_per_week", continuous, Direction::lower_is_better, {}},
      {"rating", continuous, Direction::higher_is_better, {}},
      {"meal_type", coded, std::nullopt, {{"breakfast", 0.33}, {"all_inclusive", 1.0}}},
      {"room_area", continuous, Direction::higher_is_better, {}},
      {"star", continuous, Direction::higher_is_better, {}},
      {"beach_access", binary, std::nullopt, {}},
      {"city_minutes", continuous, Direction::lower_is_better, {}},
      {"pool", binary, std::nullopt, {}},
  };
}

inline void validate_specs(const std::vector<FeatureSpec>& specs) {
  if (specs.empty()) fail(ErrorCode::validation, "no feature specs");
  std::map<std::string, int> seen;
  for (const auto& s : specs) {
    if (s.name.empty()) fail(ErrorCode::validation, "feature spec without a name");
    if (seen[s.name]++) fail(ErrorCode::validation, "duplicate feature '" + s.name + "'");
    switch (s.kind) {
      case FeatureKind::continuous:
        if (!s.direction) fail(ErrorCode::validation, "continuous feature '" + s.name + "' needs a direction");
        break;
      case FeatureKind::binary:
        if (s.direction) fail(ErrorCode::validation, "binary feature '" + s.name + "' cannot have a direction");
        break;
      case FeatureKind::coded:
        if (s.coding.empty()) fail(ErrorCode::validation, "coded feature '" + s.name + "' has no coding table");
        for (const auto& [label, c] : s.coding) {
          if (!(c >= 0.0 && c <= 1.0)) {
            fail(ErrorCode::validation, "coding of '" + s.name + "/" + label + "' outside [0, 1]");
          }
        }
        break;
    }
  }
}

inline double numeric_value(const AlternativeProfile& alt, const FeatureSpec& spec) {
  const auto it = alt.values.find(spec.name);
  if (it == alt.values.end()) {
    fail(ErrorCode::validation, "alternative '" + alt.id + "' lacks feature '" + spec.name + "'");
  }
  const double* v = std::get_if<double>(&it->second);
  if (!v || !std::isfinite(*v)) {
    fail(ErrorCode::validation, "alternative '" + alt.id + "': feature '" + spec.name + "' must be a number");
  }
  return *v;
}

inline void validate_profile(const AlternativeProfile& alt, const std::vector<FeatureSpec>& specs) {
  if (alt.id.empty()) fail(ErrorCode::validation, "alternative without an id");
  for (const auto& s : specs) {
    if (s.kind == FeatureKind::coded) {
      const auto it = alt.values.find(s.name);
      if (it == alt.values.end() || !std::holds_alternative<std::string>(it->second)) {
        fail(ErrorCode::validation, "alternative '" + alt.id + "': feature '" + s.name + "' must be a category");
      }
      continue;
    }
    const double v = numeric_value(alt, s);
    if (s.kind == FeatureKind::binary && v != 0.0 && v != 1.0) {
      fail(ErrorCode::validation, "alternative '" + alt.id + "': binary feature '" + s.name + "' must be 0 or 1");
    }
  }
}

/// Arithmetic mean of every continuous feature across the alternatives.
inline std::map<std::string, double> feature_means(const std::vector<AlternativeProfile>& alternatives,
                                                   const std::vector<FeatureSpec>& specs) {
  if (alternatives.empty()) fail(ErrorCode::validation, "feature means of an empty alternative list");
  std::map<std::string, double> means;
  for (const auto& s : specs) {
    if (s.kind != FeatureKind::continuous) continue;
    double sum = 0.0;
    for (const auto& a : alternatives) sum += numeric_value(a, s);
    means[s.name] = sum / static_cast<double>(alternatives.size());
  }
  return means;
}

inline WeightMap feature_weights(const AlternativeProfile& alt, const std::vector<FeatureSpec>& specs,
                                 const std::map<std::string, double>& means) {
  WeightMap w;
  for (const auto& s : specs) {
    switch (s.kind) {
      case FeatureKind::continuous: {
        const auto m = means.find(s.name);
        if (m == means.end()) fail(ErrorCode::validation, "no mean for feature '" + s.name + "'");
        const double v = numeric_value(alt, s);
        // Strict comparison: a value equal to the mean does not qualify.
        const bool better = (*s.direction == Direction::higher_is_better) ? v > m->second : v < m->second;
        w[s.name] = better ? 1.0 : 0.0;
        break;
      }
      case FeatureKind::binary:
        w[s.name] = numeric_value(alt, s);
        break;
      case FeatureKind::coded: {
        const auto it = alt.values.find(s.name);
        const std::string* label = it == alt.values.end() ? nullptr : std::get_if<std::string>(&it->second);
        if (!label) fail(ErrorCode::validation, "alternative '" + alt.id + "' lacks category '" + s.name + "'");
        const auto c = s.coding.find(*label);
        if (c == s.coding.end()) {
          fail(ErrorCode::validation, "alternative '" + alt.id + "': unknown " + s.name + " '" + *label + "'");
        }
        w[s.name] = c->second;
        break;
      }
    }
  }
  return w;
}

inline void validate_stances(const ExpertPreferenceVector& expert) {
  for (const auto& [feature, z] : expert.stances) {
    if (z < -1 || z > 1) {
      fail(ErrorCode::validation, "participant '" + expert.participant_id + "': stance on '" + feature +
                                      "' is " + std::to_string(z) + ", expected -1, 0 or 1");
    }
  }
}

/// Sum of weight x stance over the criteria, rounded half away from zero.
inline int raw_preference(const ExpertPreferenceVector& expert, const WeightMap& weights) {
  validate_stances(expert);
  if (expert.stances.size() != weights.size()) {
    fail(ErrorCode::validation, "participant '" + expert.participant_id + "': stance and weight criteria differ");
  }
  double sum = 0.0;
  for (const auto& [feature, w] : weights) {
    const auto z = expert.stances.find(feature);
    if (z == expert.stances.end()) {
      fail(ErrorCode::validation, "participant '" + expert.participant_id + "' has no stance on '" + feature + "'");
    }
    sum += w * z->second;
  }
  return static_cast<int>(std::round(sum));
}

/// Maps raw in [-p, p] affinely onto [0, 100].
inline double scale_preference(int raw, int feature_count) {
  if (feature_count <= 0) fail(ErrorCode::validation, "feature count must be positive");
  if (raw < -feature_count || raw > feature_count) {
    fail(ErrorCode::domain, "raw preference " + std::to_string(raw) + " outside [-" +
                                std::to_string(feature_count) + ", " + std::to_string(feature_count) + "]");
  }
  return static_cast<double>(raw + feature_count) / (2.0 * feature_count) * 100.0;
}

/// Column means of a participants x alternatives matrix. Empty cells are
/// participants who did not score that alternative and are left out.
inline std::vector<double> collective_matrix(const std::vector<std::vector<std::optional<double>>>& scaled) {
  if (scaled.empty()) fail(ErrorCode::validation, "empty preference matrix");
  const std::size_t cols = scaled.front().size();
  for (const auto& row : scaled) {
    if (row.size() != cols) fail(ErrorCode::validation, "ragged preference matrix");
  }
  std::vector<double> out(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    int n = 0;
    for (const auto& row : scaled) {
      if (row[c]) {
        sum += *row[c];
        ++n;
      }
    }
    if (n == 0) fail(ErrorCode::validation, "alternative column " + std::to_string(c + 1) + " has no votes");
    out[c] = sum / n;
  }
  return out;
}

inline std::vector<double> collective_matrix(const std::vector<std::vector<double>>& scaled) {
  std::vector<std::vector<std::optional<double>>> cells;
  cells.reserve(scaled.size());
  for (const auto& row : scaled) cells.emplace_back(row.begin(), row.end());
  return collective_matrix(cells);
}

struct PreferenceMatrix {
  std::vector<std::string> participants;
  std::vector<std::string> alternatives;
  std::vector<std::vector<int>> raw;        // [participant][alternative]
  std::vector<std::vector<double>> scaled;  // [participant][alternative]
  std::vector<double> collective;           // [alternative]
  int feature_count = 0;

  double collective_for(const std::string& alternative_id) const {
    for (std::size_t i = 0; i < alternatives.size(); ++i) {
      if (alternatives[i] == alternative_id) return collective[i];
    }
    fail(ErrorCode::not_found, "no alternative '" + alternative_id + "'");
  }
};

inline PreferenceMatrix build_preference_matrix(const std::vector<AlternativeProfile>& alternatives,
                                                const std::vector<FeatureSpec>& specs,
                                                const std::vector<ExpertPreferenceVector>& experts) {
  validate_specs(specs);
  if (experts.empty()) fail(ErrorCode::validation, "no stance vectors submitted");
  for (const auto& a : alternatives) validate_profile(a, specs);

  PreferenceMatrix m;
  m.feature_count = static_cast<int>(specs.size());
  const auto means = feature_means(alternatives, specs);
  std::vector<WeightMap> weights;
  for (const auto& a : alternatives) {
    m.alternatives.push_back(a.id);
    weights.push_back(feature_weights(a, specs, means));
  }
  for (const auto& e : experts) {
    m.participants.push_back(e.participant_id);
    auto& raw = m.raw.emplace_back();
    auto& scaled = m.scaled.emplace_back();
    for (const auto& w : weights) {
      raw.push_back(raw_preference(e, w));
      scaled.push_back(scale_preference(raw.back(), m.feature_count));
    }
  }
  m.collective = collective_matrix(m.scaled);
  return m;
}

}  // namespace fgdm::voting
