#pragma once

// Sentiment and emotion signals from discussion text, and their fusion into
// the total sentiment score fed to the decision engine.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fgdm/error.hpp"
#include "fgdm/resources.hpp"

namespace fgdm::signals {

// Constants of the lexicon scorer.
inline constexpr double kBoosterIncrement = 0.293;
inline constexpr double kNegationScalar = -0.74;
inline constexpr double kExclamationIncrement = 0.292;
inline constexpr int kMaxExclamations = 4;
inline constexpr double kNormalizationAlpha = 15.0;
inline constexpr int kNegationWindow = 3;

enum class Emotion { happy, angry, surprise, sad, fear };
inline constexpr std::array<std::string_view, 5> kEmotionNames{"happy", "angry", "surprise", "sad", "fear"};

struct EmotionVector {
  double happy = 0.0;
  double angry = 0.0;
  double surprise = 0.0;
  double sad = 0.0;
  double fear = 0.0;

  double& operator[](Emotion e) {
    switch (e) {
      case Emotion::happy: return happy;
      case Emotion::angry: return angry;
      case Emotion::surprise: return surprise;
      case Emotion::sad: return sad;
      case Emotion::fear: return fear;
    }
    return fear;
  }
  double operator[](Emotion e) const { return (*const_cast<EmotionVector*>(this))[e]; }

  double sum() const { return happy + angry + surprise + sad + fear; }
  bool is_zero() const { return sum() == 0.0; }

  friend bool operator==(const EmotionVector&, const EmotionVector&) = default;
};

/// Components in [0,1] summing to 1 within `tolerance`, or all zero.
inline void validate(const EmotionVector& v, double tolerance = 1e-6) {
  for (std::size_t i = 0; i < kEmotionNames.size(); ++i) {
    const double c = v[static_cast<Emotion>(i)];
    if (!(c >= 0.0 && c <= 1.0)) {
      fail(ErrorCode::validation, std::string("emotion '") + std::string(kEmotionNames[i]) + "' outside [0, 1]");
    }
  }
  if (!v.is_zero() && std::abs(v.sum() - 1.0) > tolerance) {
    fail(ErrorCode::validation, "emotion components must sum to 1");
  }
}

inline std::optional<Emotion> parse_emotion(std::string_view name) {
  for (std::size_t i = 0; i < kEmotionNames.size(); ++i) {
    if (kEmotionNames[i] == name) return static_cast<Emotion>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tokenization
// ---------------------------------------------------------------------------

/// Lower-cased word tokens. Apostrophes inside a word are kept ("don't");
/// bytes >= 0x80 count as word characters so UTF-8 words stay whole.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '\'') cur.pop_back();
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : text) {
    const auto u = static_cast<unsigned char>(ch);
    if (u >= 0x80 || std::isalnum(u)) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (ch == '\'' && !cur.empty()) {
      cur.push_back(ch);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

// ---------------------------------------------------------------------------
// Lexicons
// ---------------------------------------------------------------------------

namespace detail {

// Calls fn(token, value) for each "token<TAB>value" line; '#' starts a comment.
template <typename Fn>
void for_each_entry(std::string_view text, std::string_view what, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size()) {
      fail(ErrorCode::validation, std::string(what) + " line " + std::to_string(line_no) + ": expected token<TAB>value");
    }
    fn(line.substr(0, tab), line.substr(tab + 1), line_no);
    if (end == text.size()) break;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

class SentimentLexicon {
 public:
  static SentimentLexicon parse(std::string_view text) {
    SentimentLexicon lex;
    detail::for_each_entry(text, "sentiment lexicon", [&](std::string_view tok, std::string_view val, std::size_t n) {
      double v = 0.0;
      try {
        std::size_t used = 0;
        v = std::stod(std::string(val), &used);
        if (used != val.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(ErrorCode::validation, "sentiment lexicon line " + std::to_string(n) + ": bad valence");
      }
      lex.valence_[std::string(tok)] = v;
    });
    return lex;
  }

  static SentimentLexicon load(const std::string& path) { return parse(detail::read_file(path)); }
  static SentimentLexicon bundled() { return parse(resources::kSentimentLexicon); }

  double valence(const std::string& token) const {
    const auto it = valence_.find(token);
    return it == valence_.end() ? 0.0 : it->second;
  }
  std::size_t size() const { return valence_.size(); }

 private:
  std::unordered_map<std::string, double> valence_;
};

class EmotionLexicon {
 public:
  static EmotionLexicon parse(std::string_view text) {
    EmotionLexicon lex;
    detail::for_each_entry(text, "emotion lexicon", [&](std::string_view tok, std::string_view val, std::size_t n) {
      const auto e = parse_emotion(val);
      if (!e) fail(ErrorCode::validation, "emotion lexicon line " + std::to_string(n) + ": unknown emotion");
      lex.emotion_[std::string(tok)] = *e;
    });
    return lex;
  }

  static EmotionLexicon load(const std::string& path) { return parse(detail::read_file(path)); }
  static EmotionLexicon bundled() { return parse(resources::kEmotionLexicon); }

  std::optional<Emotion> emotion(const std::string& token) const {
    const auto it = emotion_.find(token);
    if (it == emotion_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return emotion_.size(); }

 private:
  std::unordered_map<std::string, Emotion> emotion_;
};

inline bool is_negator(const std::string& token) {
  static const std::unordered_set<std::string> kNegators{
      "aint",    "arent",   "cannot",   "cant",    "couldnt", "darent",  "didnt",   "doesnt",  "ain't",
      "aren't",  "can't",   "couldn't", "daren't", "didn't",  "doesn't", "dont",    "hadnt",   "hasnt",
      "havent",  "isnt",    "mightnt",  "mustnt",  "neither", "don't",   "hadn't",  "hasn't",  "haven't",
      "isn't",   "mightn't", "mustn't", "neednt",  "needn't", "never",   "none",    "nope",    "nor",
      "not",     "nothing", "nowhere",  "oughtnt", "shant",   "shouldnt", "wasnt",  "werent",  "oughtn't",
      "shan't",  "shouldn't", "wasn't", "weren't", "without", "wont",    "wouldnt", "won't",   "wouldn't",
      "rarely",  "seldom",  "despite"};
  if (kNegators.count(token)) return true;
  return token.size() > 3 && token.compare(token.size() - 3, 3, "n't") == 0;
}

/// +1 for an intensifier, -1 for a dampener, 0 otherwise.
inline int booster_direction(const std::string& token) {
  static const std::unordered_map<std::string, int> kBoosters{
      {"absolutely", 1},  {"amazingly", 1},   {"awfully", 1},      {"completely", 1}, {"decidedly", 1},
      {"deeply", 1},      {"enormously", 1},  {"entirely", 1},     {"especially", 1}, {"extremely", 1},
      {"fabulously", 1},  {"highly", 1},      {"incredibly", 1},   {"intensely", 1},  {"really", 1},
      {"remarkably", 1},  {"so", 1},          {"thoroughly", 1},   {"totally", 1},    {"tremendously", 1},
      {"unbelievably", 1}, {"utterly", 1},    {"very", 1},         {"most", 1},       {"more", 1},
      {"almost", -1},     {"barely", -1},     {"hardly", -1},      {"kinda", -1},     {"less", -1},
      {"little", -1},     {"marginally", -1}, {"occasionally", -1}, {"partly", -1},   {"scarcely", -1},
      {"slightly", -1},   {"somewhat", -1}};
  const auto it = kBoosters.find(token);
  return it == kBoosters.end() ? 0 : it->second;
}

/// s / sqrt(s^2 + alpha), clamped to [-1, 1].
inline double normalize_valence(double sum) {
  const double n = sum / std::sqrt(sum * sum + kNormalizationAlpha);
  return std::clamp(n, -1.0, 1.0);
}

/// Raw valence sum before normalization (exposed for testing).
inline double valence_sum(std::string_view text, const SentimentLexicon& lexicon) {
  const auto tokens = tokenize(text);
  double sum = 0.0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (booster_direction(tokens[i]) != 0) continue;
    double v = lexicon.valence(tokens[i]);
    if (v == 0.0) continue;
    if (i > 0) {
      if (const int b = booster_direction(tokens[i - 1]); b != 0) {
        v += (v > 0 ? 1.0 : -1.0) * b * kBoosterIncrement;
      }
    }
    for (int back = 1; back <= kNegationWindow && back <= static_cast<int>(i); ++back) {
      if (is_negator(tokens[i - back])) {
        v *= kNegationScalar;
        break;
      }
    }
    sum += v;
  }
  if (sum != 0.0) {
    const auto bangs = std::min<std::ptrdiff_t>(std::count(text.begin(), text.end(), '!'), kMaxExclamations);
    sum += (sum > 0 ? 1.0 : -1.0) * static_cast<double>(bangs) * kExclamationIncrement;
  }
  return sum;
}

/// Compound polarity in [-1, 1].
inline double score_sentiment(std::string_view text, const SentimentLexicon& lexicon) {
  return normalize_valence(valence_sum(text, lexicon));
}

/// Share of lexicon hits per emotion; all zero when nothing matches.
inline EmotionVector score_emotions(std::string_view text, const EmotionLexicon& lexicon) {
  EmotionVector counts;
  int hits = 0;
  for (const auto& tok : tokenize(text)) {
    if (const auto e = lexicon.emotion(tok)) {
      counts[*e] += 1.0;
      ++hits;
    }
  }
  if (hits == 0) return {};
  for (std::size_t i = 0; i < kEmotionNames.size(); ++i) counts[static_cast<Emotion>(i)] /= hits;
  return counts;
}

/// Strongest positive emotion minus strongest negative emotion.
inline double composite_emotion(const EmotionVector& v) {
  return std::max(v.happy, v.surprise) - std::max({v.angry, v.sad, v.fear});
}

struct FusionWeights {
  double alpha = 0.6;  // sentiment
  double beta = 0.4;   // emotion
};

inline void validate(const FusionWeights& w) {
  if (!(w.alpha >= 0.0 && w.beta >= 0.0) || std::abs(w.alpha + w.beta - 1.0) > 1e-9) {
    fail(ErrorCode::validation, "fusion weights must be non-negative and sum to 1");
  }
}

inline double total_sentiment(double sentiment, double emotion, const FusionWeights& w = {}) {
  validate(w);
  return std::clamp(w.alpha * sentiment + w.beta * emotion, -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Per-alternative aggregation
// ---------------------------------------------------------------------------

/// One scored comment: compound sentiment and composite emotion.
struct ParticipantSignal {
  std::string participant;
  double sentiment = 0.0;
  double emotion = 0.0;
};

struct AggregatedSignal {
  double sentiment = 0.0;
  double emotion = 0.0;
};

/// Means across participants; a participant's several comments are averaged first.
inline AggregatedSignal aggregate_signals(std::span<const ParticipantSignal> signals) {
  if (signals.empty()) fail(ErrorCode::validation, "no discussion signal");
  struct Acc {
    double s = 0.0, e = 0.0;
    int n = 0;
  };
  std::map<std::string, Acc> per;
  for (const auto& sig : signals) {
    auto& a = per[sig.participant];
    a.s += sig.sentiment;
    a.e += sig.emotion;
    ++a.n;
  }
  AggregatedSignal out;
  for (const auto& [_, a] : per) {
    out.sentiment += a.s / a.n;
    out.emotion += a.e / a.n;
  }
  out.sentiment /= static_cast<double>(per.size());
  out.emotion /= static_cast<double>(per.size());
  return out;
}

// alternative id -> signals from every comment on it
using DiscussionSignals = std::map<std::string, std::vector<ParticipantSignal>>;

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

struct CommentScore {
  double sentiment = 0.0;
  EmotionVector emotions;
};

class SignalProvider {
 public:
  virtual ~SignalProvider() = default;
  virtual std::string_view kind() const = 0;
  virtual CommentScore score(const std::string& participant, const std::string& alternative,
                             std::string_view text) const = 0;
};

class LexiconSignalProvider final : public SignalProvider {
 public:
  LexiconSignalProvider() : sentiment_(SentimentLexicon::bundled()), emotion_(EmotionLexicon::bundled()) {}
  LexiconSignalProvider(SentimentLexicon s, EmotionLexicon e) : sentiment_(std::move(s)), emotion_(std::move(e)) {}

  std::string_view kind() const override { return "builtin-lexicon"; }

  CommentScore score(const std::string&, const std::string&, std::string_view text) const override {
    return {score_sentiment(text, sentiment_), score_emotions(text, emotion_)};
  }

 private:
  SentimentLexicon sentiment_;
  EmotionLexicon emotion_;
};

/// Scores keyed by (participant, alternative), e.g. transcribed tool output.
class PrecomputedSignals {
 public:
  // Rounded tool output (two decimals per component) can miss 1 by a little.
  static constexpr double kSumTolerance = 0.02;

  static PrecomputedSignals from_json(const nlohmann::json& doc) {
    PrecomputedSignals p;
    try {
      for (const auto& [participant, row] : doc.at("sentiment").items()) {
        for (const auto& [alternative, value] : row.items()) {
          const double s = value.get<double>();
          if (!(s >= -1.0 && s <= 1.0)) {
            fail(ErrorCode::validation, "signals: sentiment " + participant + "/" + alternative + " outside [-1, 1]");
          }
          p.table_[{participant, alternative}].sentiment = s;
        }
      }
      for (const auto& [participant, row] : doc.at("emotions").items()) {
        for (const auto& [alternative, value] : row.items()) {
          const std::string where = participant + "/" + alternative;
          auto it = p.table_.find({participant, alternative});
          if (it == p.table_.end()) fail(ErrorCode::validation, "signals: emotions for " + where + " have no sentiment");
          EmotionVector v;
          for (const auto& [name, x] : value.items()) {
            const auto e = parse_emotion(name);
            if (!e) fail(ErrorCode::validation, "signals: unknown emotion '" + name + "' in " + where);
            v[*e] = x.get<double>();
          }
          try {
            validate(v, kSumTolerance);
          } catch (const Error& err) {
            fail(ErrorCode::validation, "signals: " + where + ": " + err.what());
          }
          it->second.emotions = v;
          p.has_emotions_.insert({participant, alternative});
        }
      }
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::validation, std::string("signals: ") + e.what());
    }
    for (const auto& [key, _] : p.table_) {
      if (!p.has_emotions_.count(key)) {
        fail(ErrorCode::validation, "signals: sentiment for " + key.first + "/" + key.second + " has no emotions");
      }
    }
    return p;
  }

  const std::map<std::pair<std::string, std::string>, CommentScore>& table() const { return table_; }

  const CommentScore* find(const std::string& participant, const std::string& alternative) const {
    const auto it = table_.find({participant, alternative});
    return it == table_.end() ? nullptr : &it->second;
  }

  /// Every (participant, alternative) entry as one comment signal.
  DiscussionSignals discussion() const {
    DiscussionSignals out;
    for (const auto& [key, score] : table_) {
      out[key.second].push_back({key.first, score.sentiment, composite_emotion(score.emotions)});
    }
    return out;
  }

 private:
  std::map<std::pair<std::string, std::string>, CommentScore> table_;
  std::set<std::pair<std::string, std::string>> has_emotions_;
};

class PrecomputedSignalProvider final : public SignalProvider {
 public:
  explicit PrecomputedSignalProvider(PrecomputedSignals table) : table_(std::move(table)) {}

  std::string_view kind() const override { return "precomputed"; }

  CommentScore score(const std::string& participant, const std::string& alternative,
                     std::string_view) const override {
    const auto* s = table_.find(participant, alternative);
    if (!s) fail(ErrorCode::validation, "no precomputed signal for " + participant + "/" + alternative);
    return *s;
  }

 private:
  PrecomputedSignals table_;
};

}  // namespace fgdm::signals
