// fgdm: batch runs over fixture files, text scoring, and the session server.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fgdm/consensus.hpp"
#include "fgdm/engines.hpp"
#include "fgdm/fixtures.hpp"
#include "fgdm/http_service.hpp"
#include "fgdm/pipeline.hpp"
#include "fgdm/session.hpp"
#include "fgdm/signals.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Runs fn and prefixes any error with the file it concerns.
template <typename Fn>
auto in_file(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const fgdm::Error& e) {
    throw fgdm::Error(e.code(), path + ": " + e.what());
  }
}

json load(const std::string& path) {
  return in_file(path, [&] { return fgdm::fixtures::read_json_file(path); });
}

fgdm::fuzzy::InferenceEngine load_engine(const std::string& path, fgdm::fuzzy::InferenceEngine fallback) {
  if (path.empty()) return fallback;
  return in_file(path, [&] { return fgdm::fuzzy::engine_from_json(fgdm::fixtures::read_json_file(path)); });
}

fgdm::signals::FusionWeights weights_from(double sentiment_weight) {
  fgdm::signals::FusionWeights w{sentiment_weight, 1.0 - sentiment_weight};
  fgdm::signals::validate(w);
  return w;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) fgdm::fail(fgdm::ErrorCode::io, path.string() + ": cannot write");
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct RunOptions {
  std::string alternatives;
  std::string stances;
  std::string signals;
  std::string comments;
  std::string feedback;
  std::string features;
  std::string engine;
  std::string feedback_engine;
  std::string defuzzifier;
  std::string sentiment_lexicon;
  std::string emotion_lexicon;
  std::string out;
  std::string format = "table";
  double sentiment_weight = 0.6;
};

// Comments file: [{participant_id, alternative, text}], scored with the lexicons.
fgdm::signals::DiscussionSignals score_comments(const RunOptions& o) {
  const auto doc = load(o.comments);
  const fgdm::signals::LexiconSignalProvider provider(
      o.sentiment_lexicon.empty() ? fgdm::signals::SentimentLexicon::bundled()
                                  : fgdm::signals::SentimentLexicon::load(o.sentiment_lexicon),
      o.emotion_lexicon.empty() ? fgdm::signals::EmotionLexicon::bundled()
                                : fgdm::signals::EmotionLexicon::load(o.emotion_lexicon));
  return in_file(o.comments, [&] {
    if (!doc.is_array()) fgdm::fail(fgdm::ErrorCode::validation, "expected an array of comments");
    fgdm::signals::DiscussionSignals out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const std::string where = "comments[" + std::to_string(i) + "]";
      const auto& c = doc[i];
      if (!c.is_object() || !c.contains("participant_id") || !c.contains("alternative") || !c.contains("text") ||
          !c["text"].is_string() || !c["alternative"].is_string()) {
        fgdm::fail(fgdm::ErrorCode::validation, where + ": needs participant_id, alternative and text");
      }
      const std::string text = c["text"];
      if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        fgdm::fail(fgdm::ErrorCode::validation, where + ".text: empty comment");
      }
      const std::string pid = c["participant_id"].is_string() ? c["participant_id"].get<std::string>()
                                                              : c["participant_id"].dump();
      const auto score = provider.score(pid, c["alternative"], text);
      out[c["alternative"]].push_back({pid, score.sentiment, fgdm::signals::composite_emotion(score.emotions)});
    }
    return out;
  });
}

int run(const RunOptions& o) {
  fgdm::PipelineInput in;
  in.weights = weights_from(o.sentiment_weight);
  if (!o.features.empty()) {
    const auto doc = load(o.features);
    in.features = in_file(o.features, [&] { return fgdm::fixtures::parse_feature_specs(doc); });
  }
  {
    const auto doc = load(o.alternatives);
    in.alternatives = in_file(o.alternatives, [&] { return fgdm::fixtures::parse_alternatives(doc, in.features); });
  }
  {
    const auto doc = load(o.stances);
    in.stances = in_file(o.stances, [&] { return fgdm::fixtures::parse_stances(doc, in.features); });
  }
  const std::string signal_file = o.signals.empty() ? o.comments : o.signals;
  if (!o.signals.empty()) {
    const auto doc = load(o.signals);
    in.discussion = in_file(o.signals, [&] { return fgdm::signals::PrecomputedSignals::from_json(doc).discussion(); });
  } else {
    in.discussion = score_comments(o);
  }

  auto engine = load_engine(o.engine, fgdm::make_total_preference_engine());
  if (!o.defuzzifier.empty()) engine = engine.with_defuzzifier(fgdm::fuzzy::parse_defuzzifier(o.defuzzifier));

  const auto result = in_file(signal_file, [&] { return fgdm::evaluate(in, engine); });

  json signals_doc = json::object();
  for (const auto& r : result.report.results) {
    signals_doc[r.id] = {{"avg_sentiment", fgdm::round4(r.avg_sentiment)},
                         {"avg_emotion", fgdm::round4(r.avg_emotion)},
                         {"total_sentiment", fgdm::round4(r.total_sentiment)}};
  }
  const json report_doc = fgdm::to_json(result.report);

  std::optional<json> consensus_doc;
  std::string consensus_table;
  if (!o.feedback.empty()) {
    const auto doc = load(o.feedback);
    const auto entries = in_file(o.feedback, [&] { return fgdm::fixtures::parse_feedback(doc); });
    const auto fb_engine = load_engine(o.feedback_engine, fgdm::make_feedback_engine());
    json rows = json::array();
    std::vector<double> values;
    std::ostringstream table;
    table << "participant   agreement  confidence  feedback\n";
    for (const auto& f : entries) {
      const double v = fgdm::consensus::feedback_value(fb_engine, f.agreement, f.confidence);
      values.push_back(v);
      rows.push_back(fgdm::consensus::to_json(fgdm::consensus::FeedbackEntry{f.participant, f.agreement, f.confidence, v}));
      table << fgdm::detail::pad(f.participant, 12, false) << "  " << fgdm::detail::pad(fgdm::detail::fixed(f.agreement, 4), 9)
            << "  " << fgdm::detail::pad(fgdm::detail::fixed(f.confidence, 4), 10) << "  "
            << fgdm::detail::pad(fgdm::detail::fixed(v, 4), 8) << '\n';
    }
    const auto c = in_file(o.feedback, [&] { return fgdm::consensus::consensus(values); });
    table << "mean " << fgdm::detail::fixed(c.mean, 4) << "  iqr " << fgdm::detail::fixed(c.iqr, 4) << "  consensus "
          << fgdm::consensus::to_string(c.level) << '\n';
    consensus_doc = fgdm::consensus::to_json(c);
    (*consensus_doc)["feedback"] = rows;
    consensus_table = table.str();
  }

  const std::string report_table = fgdm::format_table(result.report);
  const std::string matrix_table = fgdm::format_table(result.matrix);

  if (!o.out.empty()) {
    fs::create_directories(o.out);
    const fs::path dir(o.out);
    write_file(dir / "voting-matrix.json", pretty(fgdm::to_json(result.matrix)));
    write_file(dir / "collective.json", pretty(fgdm::collective_to_json(result.matrix)));
    write_file(dir / "signals.json", pretty(signals_doc));
    write_file(dir / "report.json", pretty(report_doc));
    write_file(dir / "voting-matrix.txt", matrix_table);
    write_file(dir / "report.txt", report_table);
    if (consensus_doc) {
      write_file(dir / "consensus.json", pretty(*consensus_doc));
      write_file(dir / "consensus.txt", consensus_table);
    }
  }

  if (o.format == "json") {
    json all = {{"report", report_doc}, {"collective", fgdm::collective_to_json(result.matrix)}, {"signals", signals_doc}};
    if (consensus_doc) all["consensus"] = *consensus_doc;
    std::cout << pretty(all);
  } else {
    std::cout << matrix_table << '\n' << report_table;
    if (consensus_doc) std::cout << '\n' << consensus_table;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// score-text
// ---------------------------------------------------------------------------

int score_text(const std::string& text, const std::string& sentiment_lexicon, const std::string& emotion_lexicon) {
  const auto sent = sentiment_lexicon.empty() ? fgdm::signals::SentimentLexicon::bundled()
                                              : fgdm::signals::SentimentLexicon::load(sentiment_lexicon);
  const auto emo = emotion_lexicon.empty() ? fgdm::signals::EmotionLexicon::bundled()
                                           : fgdm::signals::EmotionLexicon::load(emotion_lexicon);
  const auto e = fgdm::signals::score_emotions(text, emo);
  const json out = {{"sentiment", fgdm::round4(fgdm::signals::score_sentiment(text, sent))},
                    {"emotions",
                     {{"happy", fgdm::round4(e.happy)},
                      {"angry", fgdm::round4(e.angry)},
                      {"surprise", fgdm::round4(e.surprise)},
                      {"sad", fgdm::round4(e.sad)},
                      {"fear", fgdm::round4(e.fear)}}},
                    {"emotion_score", fgdm::round4(fgdm::signals::composite_emotion(e))}};
  std::cout << out.dump() << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// serve
// ---------------------------------------------------------------------------

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "fgdm-data";
  std::string engine;
  std::string feedback_engine;
  std::string sentiment_lexicon;
  std::string emotion_lexicon;
  std::string signals;
  double sentiment_weight = 0.6;
  bool require_owner_token = false;
  unsigned snapshot_every = 32;
};

fgdm::http::HttpService* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int serve(const ServeOptions& o) {
  fgdm::session::ServiceConfig cfg;
  cfg.data_dir = o.data_dir;
  cfg.decision_engine =
      std::make_shared<const fgdm::fuzzy::InferenceEngine>(load_engine(o.engine, fgdm::make_total_preference_engine()));
  cfg.feedback_engine =
      std::make_shared<const fgdm::fuzzy::InferenceEngine>(load_engine(o.feedback_engine, fgdm::make_feedback_engine()));
  if (!o.signals.empty()) {
    const auto doc = load(o.signals);
    cfg.provider = std::make_shared<const fgdm::signals::PrecomputedSignalProvider>(
        in_file(o.signals, [&] { return fgdm::signals::PrecomputedSignals::from_json(doc); }));
  } else {
    cfg.provider = std::make_shared<const fgdm::signals::LexiconSignalProvider>(
        o.sentiment_lexicon.empty() ? fgdm::signals::SentimentLexicon::bundled()
                                    : fgdm::signals::SentimentLexicon::load(o.sentiment_lexicon),
        o.emotion_lexicon.empty() ? fgdm::signals::EmotionLexicon::bundled()
                                  : fgdm::signals::EmotionLexicon::load(o.emotion_lexicon));
  }
  cfg.weights = weights_from(o.sentiment_weight);
  cfg.require_owner_token = o.require_owner_token;
  cfg.snapshot_every = o.snapshot_every;

  fgdm::session::SessionService sessions(cfg);
  fgdm::http::HttpService server(sessions);
  const int port = server.bind(o.host, o.port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "fgdm: listening on http://" << o.host << ":" << port << " (data in " << o.data_dir << ", "
            << sessions.session_ids().size() << " sessions recovered)" << std::endl;
  server.run();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy group decision making with sentiment and emotion signals"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run_cmd = app.add_subcommand("run", "Rank alternatives from fixture files");
  run_cmd->add_option("--alternatives", ro.alternatives, "Alternatives JSON")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--stances", ro.stances, "Stance vectors JSON")->required()->check(CLI::ExistingFile);
  auto* sig = run_cmd->add_option("--signals", ro.signals, "Precomputed sentiment and emotion JSON")
                  ->check(CLI::ExistingFile);
  auto* com = run_cmd->add_option("--comments", ro.comments, "Comments JSON scored with the lexicons")
                  ->check(CLI::ExistingFile);
  sig->excludes(com);
  run_cmd->add_option("--feedback", ro.feedback, "Feedback JSON; enables consensus output")->check(CLI::ExistingFile);
  run_cmd->add_option("--features", ro.features, "Feature spec JSON (default: hotel criteria)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--engine", ro.engine, "Decision engine JSON (default: bundled)")->check(CLI::ExistingFile);
  run_cmd->add_option("--feedback-engine", ro.feedback_engine, "Feedback engine JSON (default: bundled)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--defuzzifier", ro.defuzzifier, "centroid or mom")
      ->check(CLI::IsMember({"centroid", "mom", "mean_of_maximum"}));
  run_cmd->add_option("--sentiment-lexicon", ro.sentiment_lexicon, "token<TAB>valence file")->check(CLI::ExistingFile);
  run_cmd->add_option("--emotion-lexicon", ro.emotion_lexicon, "token<TAB>emotion file")->check(CLI::ExistingFile);
  run_cmd->add_option("--sentiment-weight", ro.sentiment_weight, "Weight of sentiment in the fused score")
      ->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--out", ro.out, "Directory for JSON and text outputs");
  run_cmd->add_option("--format", ro.format, "Standard output format")->check(CLI::IsMember({"json", "table"}));

  std::string text, text_sent, text_emo;
  auto* score_cmd = app.add_subcommand("score-text", "Print sentiment and emotions of a text");
  score_cmd->add_option("text", text, "Text to score")->required();
  score_cmd->add_option("--sentiment-lexicon", text_sent, "token<TAB>valence file")->check(CLI::ExistingFile);
  score_cmd->add_option("--emotion-lexicon", text_emo, "token<TAB>emotion file")->check(CLI::ExistingFile);

  ServeOptions so;
  auto* serve_cmd = app.add_subcommand("serve", "Run the session HTTP service");
  serve_cmd->add_option("--host", so.host, "Listen address")->envname("FGDM_HOST");
  serve_cmd->add_option("--port", so.port, "Listen port (0 picks one)")->envname("FGDM_PORT");
  serve_cmd->add_option("--data-dir", so.data_dir, "Event logs and snapshots")->envname("FGDM_DATA_DIR");
  serve_cmd->add_option("--engine", so.engine, "Decision engine JSON")->envname("FGDM_ENGINE")->check(CLI::ExistingFile);
  serve_cmd->add_option("--feedback-engine", so.feedback_engine, "Feedback engine JSON")
      ->envname("FGDM_FEEDBACK_ENGINE")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--sentiment-lexicon", so.sentiment_lexicon, "token<TAB>valence file")
      ->envname("FGDM_SENTIMENT_LEXICON")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--emotion-lexicon", so.emotion_lexicon, "token<TAB>emotion file")
      ->envname("FGDM_EMOTION_LEXICON")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--signals", so.signals, "Score comments from a precomputed table keyed by display name")
      ->envname("FGDM_SIGNALS")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--sentiment-weight", so.sentiment_weight, "Weight of sentiment in the fused score")
      ->envname("FGDM_SENTIMENT_WEIGHT")
      ->check(CLI::Range(0.0, 1.0));
  serve_cmd->add_flag("--require-owner-token", so.require_owner_token, "Only the session creator may advance")
      ->envname("FGDM_REQUIRE_OWNER_TOKEN");
  serve_cmd->add_option("--snapshot-every", so.snapshot_every, "Events between snapshots")
      ->envname("FGDM_SNAPSHOT_EVERY")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (ro.signals.empty() && ro.comments.empty()) {
        std::cerr << "fgdm: one of --signals or --comments is required\n";
        return 2;
      }
      return run(ro);
    }
    if (*score_cmd) return score_text(text, text_sent, text_emo);
    if (*serve_cmd) return serve(so);
  } catch (const fgdm::Error& e) {
    std::cerr << "fgdm: " << fgdm::to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fgdm: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
