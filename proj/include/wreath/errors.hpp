#pragma once

#include <stdexcept>
#include <string>

namespace wreath {

enum class ErrKind {
  config,            // bad config file / bad spec data
  malformed,         // element incompatible with its spec
  precondition,      // operation precondition violated
  unsupported_mode,  // exact mode requested without its preconditions
  horizon,           // sequence entry needed beyond declared horizon
  horizon_too_small, // no valid threshold within the scan horizon
  range,             // query outside computed range
  cap,               // word-length cap exceeded
  fit_failure,       // constant fit found no admissible value
  resource,          // filesystem / memory / thread failure
  internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrKind k, std::string msg, int line = -1, int col = -1)
      : std::runtime_error(std::move(msg)), kind(k), line(line), col(col) {}

  ErrKind kind;
  int line; // 1-based when >= 0 (config errors)
  int col;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg, int line = -1,
                              int col = -1) {
  throw Error(k, msg, line, col);
}

} // namespace wreath
