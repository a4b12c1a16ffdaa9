#include "qlevy/types.hpp"

namespace qlevy {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse: return "PARSE";
    case ErrorCode::shape: return "SHAPE";
    case ErrorCode::io: return "IO";
    case ErrorCode::precondition: return "PRECONDITION";
    case ErrorCode::not_a_group: return "NOT_A_GROUP";
    case ErrorCode::not_character: return "NOT_CHARACTER";
    case ErrorCode::inconsistent_pi: return "INCONSISTENT_PI";
    case ErrorCode::step_too_large: return "STEP_TOO_LARGE";
    case ErrorCode::not_isometry: return "NOT_ISOMETRY";
    case ErrorCode::not_homomorphism: return "NOT_HOMOMORPHISM";
    case ErrorCode::unbounded_support: return "UNBOUNDED_SUPPORT";
    case ErrorCode::horizon: return "HORIZON";
    case ErrorCode::breakpoint_collision: return "BREAKPOINT_COLLISION";
    case ErrorCode::budget: return "BUDGET";
    case ErrorCode::witness_shape: return "WITNESS_SHAPE";
  }
  return "UNKNOWN";
}

}  // namespace qlevy
