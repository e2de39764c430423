#pragma once

// Event-sourced group decision sessions with a JSON-lines log per session.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "fgdm/consensus.hpp"
#include "fgdm/engines.hpp"
#include "fgdm/error.hpp"
#include "fgdm/fixtures.hpp"
#include "fgdm/pipeline.hpp"
#include "fgdm/signals.hpp"
#include "fgdm/voting.hpp"

namespace fgdm::session {

using nlohmann::json;

enum class Phase { setup, voting, discussion, results, feedback, closed };

inline std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::setup: return "setup";
    case Phase::voting: return "voting";
    case Phase::discussion: return "discussion";
    case Phase::results: return "results";
    case Phase::feedback: return "feedback";
    case Phase::closed: return "closed";
  }
  return "setup";
}

inline Phase parse_phase(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(Phase::closed); ++i) {
    if (to_string(static_cast<Phase>(i)) == s) return static_cast<Phase>(i);
  }
  fail(ErrorCode::validation, "unknown phase '" + std::string(s) + "'");
}

inline std::optional<Phase> next_phase(Phase p) {
  if (p == Phase::closed) return std::nullopt;
  return static_cast<Phase>(static_cast<int>(p) + 1);
}

namespace kind {
inline constexpr const char* created = "session-created";
inline constexpr const char* joined = "participant-joined";
inline constexpr const char* stances = "stance-submitted";
inline constexpr const char* comment = "comment-posted";
inline constexpr const char* advanced = "phase-advanced";
inline constexpr const char* feedback = "feedback-submitted";
}  // namespace kind

struct SessionEvent {
  std::uint64_t seq = 0;
  std::string kind;
  json payload;
  std::string timestamp;
};

inline json to_json(const SessionEvent& e) {
  return {{"seq", e.seq}, {"kind", e.kind}, {"payload", e.payload}, {"timestamp", e.timestamp}};
}

inline SessionEvent event_from_json(const json& j) {
  try {
    return {j.at("seq").get<std::uint64_t>(), j.at("kind").get<std::string>(), j.at("payload"),
            j.at("timestamp").get<std::string>()};
  } catch (const json::exception& e) {
    fail(ErrorCode::validation, std::string("malformed event: ") + e.what());
  }
}

struct Participant {
  std::string id;
  std::string name;
};

struct Comment {
  std::uint64_t id = 0;  // sequence number of the posting event
  std::string participant;
  std::string alternative;
  std::string text;
  std::string timestamp;
  double sentiment = 0.0;
  signals::EmotionVector emotions;
  double emotion = 0.0;  // composite
};

inline json to_json(const signals::EmotionVector& v) {
  json j = json::object();
  for (std::size_t i = 0; i < signals::kEmotionNames.size(); ++i) {
    j[std::string(signals::kEmotionNames[i])] = v[static_cast<signals::Emotion>(i)];
  }
  return j;
}

inline signals::EmotionVector emotions_from_json(const json& j) {
  signals::EmotionVector v;
  for (const auto& [name, x] : j.items()) {
    const auto e = signals::parse_emotion(name);
    if (!e) fail(ErrorCode::validation, "unknown emotion '" + name + "'");
    v[*e] = x.get<double>();
  }
  return v;
}

inline json to_json(const Comment& c) {
  return {{"comment_id", c.id},         {"participant_id", c.participant}, {"alternative", c.alternative},
          {"text", c.text},             {"timestamp", c.timestamp},        {"sentiment", c.sentiment},
          {"emotions", to_json(c.emotions)}, {"emotion_score", c.emotion}};
}

inline Comment comment_from_json(const json& j) {
  Comment c;
  c.id = j.at("comment_id").get<std::uint64_t>();
  c.participant = j.at("participant_id").get<std::string>();
  c.alternative = j.at("alternative").get<std::string>();
  c.text = j.at("text").get<std::string>();
  c.timestamp = j.at("timestamp").get<std::string>();
  c.sentiment = j.at("sentiment").get<double>();
  c.emotions = emotions_from_json(j.at("emotions"));
  c.emotion = j.at("emotion_score").get<double>();
  return c;
}

// ---------------------------------------------------------------------------
// State and event application
// ---------------------------------------------------------------------------

class SessionState {
 public:
  std::string id;
  Phase phase = Phase::setup;
  std::uint64_t seq = 0;
  std::string created_at;
  std::string updated_at;
  std::string owner_token;  // never serialized into snapshots served to clients
  std::vector<voting::FeatureSpec> features;
  std::vector<voting::AlternativeProfile> alternatives;
  std::vector<Participant> participants;
  std::vector<voting::ExpertPreferenceVector> stances;  // submission order
  std::vector<Comment> comments;
  std::optional<json> report;
  std::vector<consensus::FeedbackEntry> feedback;
  std::optional<json> consensus;

  const Participant* find_participant(const std::string& pid) const {
    for (const auto& p : participants) {
      if (p.id == pid) return &p;
    }
    return nullptr;
  }

  const Participant& participant(const std::string& pid) const {
    const auto* p = find_participant(pid);
    if (!p) fail(ErrorCode::not_found, "no participant '" + pid + "' in session " + id);
    return *p;
  }

  bool has_alternative(const std::string& alt) const {
    return std::any_of(alternatives.begin(), alternatives.end(), [&](const auto& a) { return a.id == alt; });
  }

  bool has_stances(const std::string& pid) const {
    return std::any_of(stances.begin(), stances.end(), [&](const auto& s) { return s.participant_id == pid; });
  }

  bool has_feedback(const std::string& pid) const {
    return std::any_of(feedback.begin(), feedback.end(), [&](const auto& f) { return f.participant == pid; });
  }

  void require_phase(Phase want, std::string_view what) const {
    if (phase != want) {
      fail(ErrorCode::phase_conflict, std::string(what) + " is only allowed in the " + std::string(to_string(want)) +
                                          " phase; session is in " + std::string(to_string(phase)));
    }
  }

  /// Applies one event. Every rule checked by the live commands is checked
  /// again here, so a log that replays cleanly is a legal history.
  void apply(const SessionEvent& e) {
    if (e.seq != seq + 1) {
      fail(ErrorCode::validation, "event " + std::to_string(e.seq) + " does not follow " + std::to_string(seq));
    }
    if (seq == 0 && e.kind != kind::created) fail(ErrorCode::validation, "log must start with " + std::string(kind::created));
    const json& p = e.payload;
    try {
      if (e.kind == kind::created) {
        if (seq != 0) fail(ErrorCode::validation, "session created twice");
        id = p.at("session_id").get<std::string>();
        owner_token = p.value("owner_token", "");
        features = fixtures::parse_feature_specs(p.at("features"));
        alternatives = fixtures::parse_alternatives(p.at("alternatives"), features);
        created_at = e.timestamp;
      } else if (e.kind == kind::joined) {
        if (phase != Phase::setup && phase != Phase::voting) {
          fail(ErrorCode::phase_conflict, "joining is only allowed in the setup and voting phases");
        }
        Participant np{p.at("participant_id").get<std::string>(), p.at("name").get<std::string>()};
        if (find_participant(np.id)) fail(ErrorCode::conflict, "participant '" + np.id + "' already joined");
        participants.push_back(std::move(np));
      } else if (e.kind == kind::stances) {
        require_phase(Phase::voting, "submitting stances");
        auto v = fixtures::parse_stance_vector(p, features, "stances");
        participant(v.participant_id);
        if (has_stances(v.participant_id)) {
          fail(ErrorCode::conflict, "participant '" + v.participant_id + "' already submitted stances");
        }
        stances.push_back(std::move(v));
      } else if (e.kind == kind::comment) {
        require_phase(Phase::discussion, "commenting");
        Comment c = comment_from_json(p);
        participant(c.participant);
        if (!has_alternative(c.alternative)) fail(ErrorCode::not_found, "no alternative '" + c.alternative + "'");
        if (c.id != e.seq) fail(ErrorCode::validation, "comment id does not match its event");
        comments.push_back(std::move(c));
      } else if (e.kind == kind::advanced) {
        const Phase from = parse_phase(p.at("from").get<std::string>());
        const Phase to = parse_phase(p.at("to").get<std::string>());
        if (from != phase || next_phase(phase) != to) {
          fail(ErrorCode::phase_conflict, "cannot move from " + std::string(to_string(phase)) + " to " +
                                              std::string(to_string(to)));
        }
        if (to == Phase::results) {
          if (!p.contains("report")) fail(ErrorCode::validation, "entering results without a report");
          report = p.at("report");
        }
        if (to == Phase::closed) {
          if (!p.contains("consensus")) fail(ErrorCode::validation, "closing without a consensus report");
          consensus = p.at("consensus");
        }
        phase = to;
      } else if (e.kind == kind::feedback) {
        require_phase(Phase::feedback, "submitting feedback");
        consensus::FeedbackEntry f{p.at("participant_id").get<std::string>(), p.at("agreement").get<double>(),
                                   p.at("confidence").get<double>(), p.at("feedback_value").get<double>()};
        participant(f.participant);
        if (has_feedback(f.participant)) {
          fail(ErrorCode::conflict, "participant '" + f.participant + "' already submitted feedback");
        }
        feedback.push_back(std::move(f));
      } else {
        fail(ErrorCode::validation, "unknown event kind '" + e.kind + "'");
      }
    } catch (const json::exception& ex) {
      fail(ErrorCode::validation, "event " + std::to_string(e.seq) + " (" + e.kind + "): " + ex.what());
    }
    seq = e.seq;
    updated_at = e.timestamp;
  }
};

/// Canonical serialized state; keys sort, so equal states dump byte-identically.
inline json to_json(const SessionState& s) {
  json alts = json::array(), feats = json::array(), people = json::array(), stances = json::array(),
       comments = json::array(), feedback = json::array();
  for (const auto& a : s.alternatives) alts.push_back(fixtures::to_json(a));
  for (const auto& f : s.features) feats.push_back(fixtures::to_json(f));
  for (const auto& p : s.participants) {
    people.push_back({{"participant_id", p.id},
                      {"name", p.name},
                      {"has_stances", s.has_stances(p.id)},
                      {"has_feedback", s.has_feedback(p.id)}});
  }
  for (const auto& v : s.stances) stances.push_back(fixtures::to_json(v));
  for (const auto& c : s.comments) comments.push_back(to_json(c));
  for (const auto& f : s.feedback) feedback.push_back(consensus::to_json(f));
  json j = {{"session_id", s.id},     {"phase", std::string(to_string(s.phase))},
            {"seq", s.seq},           {"created_at", s.created_at},
            {"updated_at", s.updated_at}, {"features", feats},
            {"alternatives", alts},   {"participants", people},
            {"stances", stances},     {"comments", comments},
            {"feedback", feedback}};
  if (s.report) j["report"] = *s.report;
  if (s.consensus) j["consensus"] = *s.consensus;
  return j;
}

inline SessionState state_from_json(const json& j, std::string owner_token = {}) {
  SessionState s;
  try {
    s.id = j.at("session_id").get<std::string>();
    s.phase = parse_phase(j.at("phase").get<std::string>());
    s.seq = j.at("seq").get<std::uint64_t>();
    s.created_at = j.at("created_at").get<std::string>();
    s.updated_at = j.at("updated_at").get<std::string>();
    s.owner_token = std::move(owner_token);
    s.features = fixtures::parse_feature_specs(j.at("features"));
    s.alternatives = fixtures::parse_alternatives(j.at("alternatives"), s.features);
    for (const auto& p : j.at("participants")) {
      s.participants.push_back({p.at("participant_id").get<std::string>(), p.at("name").get<std::string>()});
    }
    for (const auto& v : j.at("stances")) s.stances.push_back(fixtures::parse_stance_vector(v, s.features, "stances"));
    for (const auto& c : j.at("comments")) s.comments.push_back(comment_from_json(c));
    for (const auto& f : j.at("feedback")) {
      s.feedback.push_back({f.at("participant_id").get<std::string>(), f.at("agreement").get<double>(),
                            f.at("confidence").get<double>(), f.at("feedback_value").get<double>()});
    }
    if (j.contains("report")) s.report = j.at("report");
    if (j.contains("consensus")) s.consensus = j.at("consensus");
  } catch (const json::exception& e) {
    fail(ErrorCode::validation, std::string("malformed session snapshot: ") + e.what());
  }
  return s;
}

inline SessionState replay(const std::vector<SessionEvent>& events, SessionState from = {}) {
  for (const auto& e : events) {
    if (e.seq > from.seq) from.apply(e);
  }
  return from;
}

/// Reads a JSON-lines event log. A final line without its newline is a torn
/// write and is dropped; any other bad line is an error.
inline std::vector<SessionEvent> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<SessionEvent> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) break;
    ++line_no;
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      out.push_back(event_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      fail(ErrorCode::validation, path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Service
// ---------------------------------------------------------------------------

inline std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday,
                tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

struct ServiceConfig {
  std::filesystem::path data_dir;  // empty keeps sessions in memory only
  std::shared_ptr<const fuzzy::InferenceEngine> decision_engine;
  std::shared_ptr<const fuzzy::InferenceEngine> feedback_engine;
  std::shared_ptr<const signals::SignalProvider> provider;
  signals::FusionWeights weights;
  bool require_owner_token = false;
  std::uint64_t snapshot_every = 32;
  std::function<std::string()> clock = utc_now;
};

inline ServiceConfig default_config() {
  ServiceConfig c;
  c.decision_engine = std::make_shared<const fuzzy::InferenceEngine>(make_total_preference_engine());
  c.feedback_engine = std::make_shared<const fuzzy::InferenceEngine>(make_feedback_engine());
  c.provider = std::make_shared<const signals::LexiconSignalProvider>();
  return c;
}

struct Created {
  std::string session_id;
  std::string owner_token;
};

/// Read-only view published after every mutation.
struct Snapshot {
  SessionState state;
  json doc;
};

class SessionService {
 public:
  explicit SessionService(ServiceConfig config) : config_(std::move(config)) {
    if (!config_.decision_engine || !config_.feedback_engine || !config_.provider) {
      fail(ErrorCode::validation, "service needs a decision engine, a feedback engine and a signal provider");
    }
    signals::validate(config_.weights);
    if (config_.snapshot_every == 0) config_.snapshot_every = 1;
    if (!config_.data_dir.empty()) {
      std::filesystem::create_directories(config_.data_dir);
      recover();
    }
  }

  const ServiceConfig& config() const { return config_; }

  Created create_session(const std::vector<voting::AlternativeProfile>& alternatives,
                         const std::vector<voting::FeatureSpec>& features) {
    voting::validate_specs(features);
    if (alternatives.empty()) fail(ErrorCode::validation, "a session needs at least one alternative");
    json alts = json::array(), feats = json::array();
    for (const auto& a : alternatives) alts.push_back(fixtures::to_json(a));
    for (const auto& f : features) feats.push_back(fixtures::to_json(f));

    Created c{random_hex(12), random_hex(32)};
    auto slot = std::make_shared<Slot>();
    std::lock_guard write(slot->write_mu);
    {
      std::unique_lock lock(sessions_mu_);
      while (sessions_.count(c.session_id)) c.session_id = random_hex(12);
      sessions_[c.session_id] = slot;
    }
    try {
      commit(*slot, SessionState{}, kind::created,
             {{"session_id", c.session_id}, {"owner_token", c.owner_token}, {"features", feats}, {"alternatives", alts}});
    } catch (...) {
      std::unique_lock lock(sessions_mu_);
      sessions_.erase(c.session_id);
      throw;
    }
    return c;
  }

  Participant join(const std::string& sid, const std::string& name) {
    if (name.empty() || name.size() > 200) fail(ErrorCode::validation, "name must have 1 to 200 characters");
    return mutate(sid, [&](const SessionState& s) -> std::pair<std::string, json> {
      for (const auto& p : s.participants) {
        if (p.name == name) fail(ErrorCode::conflict, "name '" + name + "' is taken in this session");
      }
      const std::string pid = "p" + std::to_string(s.participants.size() + 1);
      return {kind::joined, {{"participant_id", pid}, {"name", name}}};
    }, [](const SessionState& s) { return s.participants.back(); });
  }

  voting::ExpertPreferenceVector submit_stances(const std::string& sid, const voting::ExpertPreferenceVector& v) {
    return mutate(sid, [&](const SessionState&) -> std::pair<std::string, json> {
      return {kind::stances, fixtures::to_json(v)};
    }, [](const SessionState& s) { return s.stances.back(); });
  }

  Comment post_comment(const std::string& sid, const std::string& pid, const std::string& alternative,
                       const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) fail(ErrorCode::validation, "comment text is empty");
    return mutate(sid, [&](const SessionState& s) -> std::pair<std::string, json> {
      s.require_phase(Phase::discussion, "commenting");
      const auto& who = s.participant(pid);
      if (!s.has_alternative(alternative)) fail(ErrorCode::not_found, "no alternative '" + alternative + "'");
      const auto score = config_.provider->score(who.name, alternative, text);
      Comment c{s.seq + 1, pid, alternative, text, "", score.sentiment, score.emotions,
                signals::composite_emotion(score.emotions)};
      json j = to_json(c);
      j.erase("timestamp");
      return {kind::comment, j};
    }, [](const SessionState& s) { return s.comments.back(); });
  }

  Phase advance(const std::string& sid, const std::string& owner_token = {}) {
    return mutate(sid, [&](const SessionState& s) -> std::pair<std::string, json> {
      if (config_.require_owner_token && owner_token != s.owner_token) {
        fail(ErrorCode::forbidden, "advancing this session needs its owner token");
      }
      const auto to = next_phase(s.phase);
      if (!to) fail(ErrorCode::phase_conflict, "session is closed");
      json p = {{"from", std::string(to_string(s.phase))}, {"to", std::string(to_string(*to))}};
      if (*to == Phase::discussion && s.stances.empty()) {
        fail(ErrorCode::phase_conflict, "cannot start the discussion before any stances are submitted");
      }
      if (*to == Phase::results) p["report"] = compute_report(s);
      if (*to == Phase::closed) p["consensus"] = compute_consensus(s);
      return {kind::advanced, p};
    }, [](const SessionState& s) { return s.phase; });
  }

  consensus::FeedbackEntry submit_feedback(const std::string& sid, const std::string& pid, double agreement,
                                           double confidence) {
    for (double v : {agreement, confidence}) {
      if (!(v >= 0.0 && v <= 10.0)) fail(ErrorCode::validation, "agreement and confidence must lie in [0, 10]");
    }
    return mutate(sid, [&](const SessionState& s) -> std::pair<std::string, json> {
      s.require_phase(Phase::feedback, "submitting feedback");
      s.participant(pid);
      if (s.has_feedback(pid)) fail(ErrorCode::conflict, "participant '" + pid + "' already submitted feedback");
      const double value = consensus::feedback_value(*config_.feedback_engine, agreement, confidence);
      return {kind::feedback,
              {{"participant_id", pid}, {"agreement", agreement}, {"confidence", confidence}, {"feedback_value", value}}};
    }, [](const SessionState& s) { return s.feedback.back(); });
  }

  std::shared_ptr<const Snapshot> snapshot(const std::string& sid) const {
    auto slot = find(sid);
    std::lock_guard lock(slot->snap_mu);
    return slot->snapshot;
  }

  json state(const std::string& sid) const { return snapshot(sid)->doc; }

  std::vector<std::string> session_ids() const {
    std::shared_lock lock(sessions_mu_);
    std::vector<std::string> ids;
    for (const auto& [id, _] : sessions_) ids.push_back(id);
    return ids;
  }

  std::filesystem::path log_path(const std::string& sid) const { return config_.data_dir / sid / "events.jsonl"; }
  std::filesystem::path snapshot_path(const std::string& sid) const { return config_.data_dir / sid / "snapshot.json"; }

 private:
  struct Slot {
    std::mutex write_mu;  // single writer per session
    SessionState state;
    std::ofstream log;
    mutable std::mutex snap_mu;
    std::shared_ptr<const Snapshot> snapshot;
  };

  std::shared_ptr<Slot> find(const std::string& sid) const {
    std::shared_lock lock(sessions_mu_);
    const auto it = sessions_.find(sid);
    if (it == sessions_.end()) fail(ErrorCode::not_found, "no session '" + sid + "'");
    return it->second;
  }

  template <typename Build, typename Result>
  auto mutate(const std::string& sid, Build&& build, Result&& result)
      -> std::invoke_result_t<Result&, const SessionState&> {
    auto slot = find(sid);
    std::lock_guard write(slot->write_mu);
    auto [k, payload] = build(slot->state);
    commit(*slot, slot->state, k, std::move(payload));
    return result(slot->state);
  }

  // Applies to a copy first so a rejected or unwritable event leaves the
  // session untouched.
  void commit(Slot& slot, SessionState next, const std::string& k, json payload) {
    SessionEvent e{next.seq + 1, k, std::move(payload), config_.clock()};
    if (k == kind::comment) e.payload["timestamp"] = e.timestamp;
    next.apply(e);
    if (!config_.data_dir.empty()) {
      if (!slot.log.is_open()) {
        std::filesystem::create_directories(config_.data_dir / next.id);
        slot.log.open(log_path(next.id), std::ios::binary | std::ios::app);
      }
      slot.log << to_json(e).dump() << '\n';
      slot.log.flush();
      if (!slot.log) fail(ErrorCode::io, "cannot append to the event log of session " + next.id);
    }
    slot.state = std::move(next);
    publish(slot);
    if (!config_.data_dir.empty() && slot.state.seq % config_.snapshot_every == 0) {
      // The log is authoritative; a failed snapshot only costs replay time.
      try {
        write_snapshot(slot);
      } catch (const std::exception&) {
      }
    }
  }

  static void publish(Slot& slot) {
    auto snap = std::make_shared<const Snapshot>(Snapshot{slot.state, to_json(slot.state)});
    std::lock_guard lock(slot.snap_mu);
    slot.snapshot = std::move(snap);
  }

  void write_snapshot(const Slot& slot) const {
    const auto path = snapshot_path(slot.state.id);
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << json{{"owner_token", slot.state.owner_token}, {"state", to_json(slot.state)}}.dump() << '\n';
      if (!out) fail(ErrorCode::io, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
  }

  void recover() {
    for (const auto& entry : std::filesystem::directory_iterator(config_.data_dir)) {
      if (!entry.is_directory()) continue;
      const std::string sid = entry.path().filename().string();
      if (!std::filesystem::exists(log_path(sid))) continue;
      auto slot = std::make_shared<Slot>();
      SessionState base;
      if (std::filesystem::exists(snapshot_path(sid))) {
        const auto snap = fixtures::read_json_file(snapshot_path(sid).string());
        base = state_from_json(snap.at("state"), snap.value("owner_token", ""));
      }
      slot->state = replay(read_event_log(log_path(sid)), std::move(base));
      if (slot->state.id != sid) fail(ErrorCode::validation, "session directory " + sid + " holds another session");
      truncate_torn_tail(log_path(sid));
      slot->log.open(log_path(sid), std::ios::binary | std::ios::app);
      publish(*slot);
      sessions_[sid] = std::move(slot);
    }
  }

  static void truncate_torn_tail(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    if (text.empty() || text.back() == '\n') return;
    const auto keep = text.rfind('\n');
    std::filesystem::resize_file(path, keep == std::string::npos ? 0 : keep + 1);
  }

  json compute_report(const SessionState& s) const {
    PipelineInput in;
    in.alternatives = s.alternatives;
    in.features = s.features;
    in.stances = s.stances;
    in.weights = config_.weights;
    for (const auto& c : s.comments) in.discussion[c.alternative].push_back({c.participant, c.sentiment, c.emotion});
    for (const auto& a : s.alternatives) {
      if (!in.discussion.count(a.id)) {
        fail(ErrorCode::phase_conflict, "cannot compute results: alternative '" + a.id + "' has no comments");
      }
    }
    const auto out = evaluate(in, *config_.decision_engine);
    json j = fgdm::to_json(out.report);
    j["preference_matrix"] = fgdm::to_json(out.matrix);
    j["collective"] = collective_to_json(out.matrix);
    return j;
  }

  static json compute_consensus(const SessionState& s) {
    if (s.feedback.size() < 2) fail(ErrorCode::phase_conflict, "closing needs feedback from at least two participants");
    std::vector<double> values;
    for (const auto& f : s.feedback) values.push_back(f.value);
    return consensus::to_json(consensus::consensus(values));
  }

  std::string random_hex(std::size_t n) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::lock_guard lock(rng_mu_);
    std::string s(n, '0');
    for (auto& ch : s) ch = kHex[rng_() & 15u];
    return s;
  }

  ServiceConfig config_;
  mutable std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::mutex rng_mu_;
  std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace fgdm::session
