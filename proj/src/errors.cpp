#include "perverse/errors.hpp"

namespace perverse {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::shape: return "shape";
    case ErrorCode::not_symmetric: return "not_symmetric";
    case ErrorCode::not_in_radical: return "not_in_radical";
    case ErrorCode::not_fiber_cycle: return "not_fiber_cycle";
    case ErrorCode::degenerate_pairing: return "degenerate_pairing";
    case ErrorCode::singular: return "singular";
    case ErrorCode::invalid_complex: return "invalid_complex";
    case ErrorCode::invalid_map: return "invalid_map";
    case ErrorCode::hypothesis: return "hypothesis";
    case ErrorCode::cancelled: return "cancelled";
    case ErrorCode::parse: return "parse";
    case ErrorCode::schema: return "schema";
  }
  return "unknown";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::hypothesis_not_met: return "hypothesis-not-met";
  }
  return "unknown";
}

}  // namespace perverse
