#pragma once

#include <stdexcept>
#include <string>

namespace cubik {

enum class ErrorCode {
  kBadInput,
  kNotAHypercube,
  kBadGluing,
  kDanglingVertex,
  kOutOfRange,
  kUnknownVertex,
  kNotConnected,
  kNotMedian,
  kNotConvex,
  kNotTwoComponents,
  kNotCat0,
  kTooLarge,
  kNotExtremal,
  kNotDisjoint,
  kNotACuboid,
  kOverlap,
  kBrokenString,
  kUnreachable,
  kDimensionTooLarge,
  kNotCollapsible,
  kBadParams,
  kNotIsomorphic,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cubik
