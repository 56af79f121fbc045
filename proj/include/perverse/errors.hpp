#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perverse {

enum class ErrorCode {
  shape,
  not_symmetric,
  not_in_radical,
  not_fiber_cycle,
  degenerate_pairing,
  singular,
  invalid_complex,
  invalid_map,
  hypothesis,
  cancelled,
  parse,
  schema,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every library failure. The code lets the CLI map
/// failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Tri-state outcome of a check.
enum class Status { pass, fail, hypothesis_not_met };

std::string_view to_string(Status status);

inline Status status_of(bool ok) { return ok ? Status::pass : Status::fail; }

}  // namespace perverse
