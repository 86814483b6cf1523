#include "cubik/error.hpp"

namespace cubik {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadInput: return "BadInput";
    case ErrorCode::kNotAHypercube: return "NotAHypercube";
    case ErrorCode::kBadGluing: return "BadGluing";
    case ErrorCode::kDanglingVertex: return "DanglingVertex";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kUnknownVertex: return "UnknownVertex";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kNotMedian: return "NotMedian";
    case ErrorCode::kNotConvex: return "NotConvex";
    case ErrorCode::kNotTwoComponents: return "NotTwoComponents";
    case ErrorCode::kNotCat0: return "NotCat0";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotExtremal: return "NotExtremal";
    case ErrorCode::kNotDisjoint: return "NotDisjoint";
    case ErrorCode::kNotACuboid: return "NotACuboid";
    case ErrorCode::kOverlap: return "Overlap";
    case ErrorCode::kBrokenString: return "BrokenString";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kNotCollapsible: return "NotCollapsible";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kNotIsomorphic: return "NotIsomorphic";
  }
  return "Unknown";
}

}  // namespace cubik
