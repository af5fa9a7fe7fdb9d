#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framerec {

enum class ErrorCode {
  CoincidentLines,
  DegeneratePencil,
  NotCollinear,
  TransversalThroughApex,
  NonConcurrentPencil,
  EmptyInput,
  VpAtMidpoint,
  InvalidTriplet,
  NegativeFocalSquare,
  TooFewFiniteVps,
  RayParallelToPlane,
  CornerBehindCamera,
  EmptyImageBounds,
  EmptyGroup,
  NotApplicable,
  ParallelDefiningLines,
  CornerInconsistent,
  CandidateExplosion,
  EmptyCandidateSet,
  AllCandidatesFailedDepth,
  CategoryUnreachable,
  CategoryMismatch,
  LengthMismatch,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Pipeline stages of `recover`, used to label propagated failures.
enum class Stage {
  Input,
  Calibrate,
  Classify,
  Reclassify,
  Connect,
  Partition,
  Fit,
  Vote,
  Enumerate,
  Select,
};

std::string_view to_string(Stage stage);

class StageError : public Error {
 public:
  StageError(Stage stage, ErrorCode code, const std::string& what)
      : Error(code, std::string(to_string(stage)) + " stage: " + what), stage_(stage) {}

  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

}  // namespace framerec
