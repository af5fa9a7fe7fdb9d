#include "framerec/error.hpp"

namespace framerec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::DegeneratePencil: return "DegeneratePencil";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::TransversalThroughApex: return "TransversalThroughApex";
    case ErrorCode::NonConcurrentPencil: return "NonConcurrentPencil";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::VpAtMidpoint: return "VpAtMidpoint";
    case ErrorCode::InvalidTriplet: return "InvalidTriplet";
    case ErrorCode::NegativeFocalSquare: return "NegativeFocalSquare";
    case ErrorCode::TooFewFiniteVps: return "TooFewFiniteVps";
    case ErrorCode::RayParallelToPlane: return "RayParallelToPlane";
    case ErrorCode::CornerBehindCamera: return "CornerBehindCamera";
    case ErrorCode::EmptyImageBounds: return "EmptyImageBounds";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ParallelDefiningLines: return "ParallelDefiningLines";
    case ErrorCode::CornerInconsistent: return "CornerInconsistent";
    case ErrorCode::CandidateExplosion: return "CandidateExplosion";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::AllCandidatesFailedDepth: return "AllCandidatesFailedDepth";
    case ErrorCode::CategoryUnreachable: return "CategoryUnreachable";
    case ErrorCode::CategoryMismatch: return "CategoryMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Input: return "input";
    case Stage::Calibrate: return "calibrate";
    case Stage::Classify: return "classify";
    case Stage::Reclassify: return "reclassify";
    case Stage::Connect: return "connect";
    case Stage::Partition: return "partition";
    case Stage::Fit: return "fit";
    case Stage::Vote: return "vote";
    case Stage::Enumerate: return "enumerate";
    case Stage::Select: return "select";
  }
  return "unknown";
}

}  // namespace framerec
