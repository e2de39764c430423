#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgdm {

enum class ErrorCode {
  domain,          // numeric input outside a declared domain
  validation,      // malformed or inconsistent input data
  not_found,       // unknown session/participant/alternative id
  conflict,        // duplicate submission
  phase_conflict,  // operation not allowed in the current session phase
  forbidden,       // missing or wrong owner token
  no_rule_fired,   // defuzzification of an all-zero aggregate
  io,              // filesystem failure
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::validation: return "validation";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::phase_conflict: return "phase_conflict";
    case ErrorCode::forbidden: return "forbidden";
    case ErrorCode::no_rule_fired: return "no_rule_fired";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fgdm
