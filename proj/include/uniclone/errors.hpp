#pragma once

#include <stdexcept>
#include <string>

namespace uniclone {

enum class ErrorCode {
  bad_argument,    // caller violated a precondition
  ground_mismatch, // operands live on different ground sets
  cap_exceeded,    // construction would exceed a configured size cap
  parse_error,     // formula / JSON text is malformed
  unknown_symbol,  // formula references an unregistered table
  arity_mismatch,  // table applied to the wrong number of arguments
  not_a_filter,    // supplied family fails the filter axioms
  internal,        // invariant broken; signals a bug, not a valid state
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

} // namespace uniclone
