#pragma once

#include <stdexcept>
#include <string>

namespace tropmirror {

enum class ErrorCode {
  Validation,
  DimensionMismatch,
  NotFullDimensional,
  NotSmooth,
  NonSimplicial,
  NonTransverse,
  UnknownMonomial,
  EmptyRegion,
  NotEquivalent,
  DegeneratePolytope,
  NotTriangulation,
  OriginMissing,
  NegativeExponent,
  DualityFailure,
  IndexOutOfRange,
  MismatchedAmbient,
  OverlappingBlocks,
  UnknownCoordinate,
  DualityNotVerified,
  Disconnected,
  InconsistentIdentification,
  NotStarShaped,
  ZeroCoordinate,
  SolveFailure,
  BoundViolated,
  TooSmallT,
  IntegrationDrift,
  CocycleFailure,
  Internal
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace tropmirror
