#pragma once

// JSON over HTTP front end for SessionService.

#include <string>

#include <httplib.h>
#include <json.hpp>

#include "fgdm/error.hpp"
#include "fgdm/fixtures.hpp"
#include "fgdm/session.hpp"

namespace fgdm::http {

using nlohmann::json;

inline int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::conflict:
    case ErrorCode::phase_conflict: return 409;
    case ErrorCode::forbidden: return 403;
    case ErrorCode::domain:
    case ErrorCode::validation:
    case ErrorCode::no_rule_fired: return 422;
    case ErrorCode::io: return 500;
  }
  return 500;
}

inline void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, status_for(code), {{"code", std::string(to_string(code))}, {"message", message}});
}

class HttpService {
 public:
  explicit HttpService(session::SessionService& sessions) : sessions_(sessions) { routes(); }

  httplib::Server& server() { return server_; }

  /// Binds to host:port; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) fail(ErrorCode::io, "cannot listen on " + host + ":" + std::to_string(port));
    return bound;
  }

  bool run() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  // Translates library errors into the JSON error body.
  static httplib::Server::Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const Error& e) {
        send_error(res, e.code(), e.what());
      } catch (const json::exception& e) {
        send_error(res, ErrorCode::validation, e.what());
      } catch (const std::exception& e) {
        send_error(res, ErrorCode::io, e.what());
      }
    };
  }

  static json body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
      auto j = json::parse(req.body);
      if (!j.is_object()) fail(ErrorCode::validation, "request body must be a JSON object");
      return j;
    } catch (const json::parse_error& e) {
      fail(ErrorCode::validation, std::string("request body is not JSON: ") + e.what());
    }
  }

  static std::string string_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string()) fail(ErrorCode::validation, std::string("'") + key + "' must be a string");
    return j[key].get<std::string>();
  }

  static double number_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) fail(ErrorCode::validation, std::string("'") + key + "' must be a number");
    return j[key].get<double>();
  }

  void routes() {
    server_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server_.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type, X-Owner-Token");
      res.status = 204;
    });
    server_.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        send_error(res, res.status == 404 ? ErrorCode::not_found : ErrorCode::validation,
                   "no route for this request");
      }
    });

    server_.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"status", "ok"}});
    });

    server_.Get("/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, {{"sessions", sessions_.session_ids()}});
    }));

    server_.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto j = body(req);
      const auto specs =
          j.contains("features") ? fixtures::parse_feature_specs(j["features"]) : voting::hotel_feature_specs();
      if (!j.contains("alternatives")) fail(ErrorCode::validation, "'alternatives' is required");
      const auto alts = fixtures::parse_alternatives(j["alternatives"], specs);
      const auto c = sessions_.create_session(alts, specs);
      send_json(res, 201, {{"session_id", c.session_id}, {"owner_token", c.owner_token}, {"phase", "setup"}});
    }));

    server_.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto snap = sessions_.snapshot(req.matches[1]);
      res.status = 200;
      res.set_content(snap->doc.dump(), "application/json");
    }));

    server_.Get(R"(/sessions/([^/]+)/report)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto snap = sessions_.snapshot(req.matches[1]);
      if (!snap->state.report) {
        fail(ErrorCode::phase_conflict, "no report before the results phase; session is in " +
                                            std::string(session::to_string(snap->state.phase)));
      }
      json out = *snap->state.report;
      out["phase"] = std::string(session::to_string(snap->state.phase));
      if (snap->state.consensus) out["consensus"] = *snap->state.consensus;
      send_json(res, 200, out);
    }));

    server_.Post(R"(/sessions/([^/]+)/participants)",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const auto p = sessions_.join(req.matches[1], string_field(body(req), "name"));
                   send_json(res, 201, {{"participant_id", p.id}, {"name", p.name}});
                 }));

    server_.Post(R"(/sessions/([^/]+)/stances)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const std::string sid = req.matches[1];
      const auto snap = sessions_.snapshot(sid);
      const auto v = fixtures::parse_stance_vector(body(req), snap->state.features, "body");
      const auto stored = sessions_.submit_stances(sid, v);
      send_json(res, 201, fixtures::to_json(stored));
    }));

    server_.Post(R"(/sessions/([^/]+)/comments)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto j = body(req);
      const auto c = sessions_.post_comment(req.matches[1], string_field(j, "participant_id"),
                                            string_field(j, "alternative"), string_field(j, "text"));
      send_json(res, 201, session::to_json(c));
    }));

    server_.Post(R"(/sessions/([^/]+)/advance)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::string token = req.get_header_value("X-Owner-Token");
      if (token.empty()) {
        const auto j = body(req);
        if (j.contains("owner_token") && j["owner_token"].is_string()) token = j["owner_token"].get<std::string>();
      }
      const auto phase = sessions_.advance(req.matches[1], token);
      send_json(res, 200, {{"phase", std::string(session::to_string(phase))}});
    }));

    server_.Post(R"(/sessions/([^/]+)/feedback)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto j = body(req);
      const auto f = sessions_.submit_feedback(req.matches[1], string_field(j, "participant_id"),
                                               number_field(j, "agreement"), number_field(j, "confidence"));
      send_json(res, 201, consensus::to_json(f));
    }));
  }

  session::SessionService& sessions_;
  httplib::Server server_;
};

}  // namespace fgdm::http
