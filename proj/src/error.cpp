#include "symrigid/error.hpp"

namespace symrigid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::LabelDimMismatch: return "LabelDimMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotIndex2: return "NotIndex2";
    case ErrorCode::ContainsInversion: return "ContainsInversion";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::ActionNotHomomorphism: return "ActionNotHomomorphism";
    case ErrorCode::ActionNotFree: return "ActionNotFree";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotOrbitClosed: return "NotOrbitClosed";
    case ErrorCode::EquatorMismatch: return "EquatorMismatch";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::FixedVertexOffMirror: return "FixedVertexOffMirror";
    case ErrorCode::UnrealizableFixedVertex: return "UnrealizableFixedVertex";
    case ErrorCode::VertexOnMirrorNormal: return "VertexOnMirrorNormal";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
  }
  return "Unknown";
}

}  // namespace symrigid
