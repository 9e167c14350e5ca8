#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symrigid {

enum class ErrorCode {
  InvalidArgument,
  UnknownLabel,
  LabelDimMismatch,
  DimensionMismatch,
  NonFinite,
  NotIndex2,
  ContainsInversion,
  NotAutomorphism,
  ActionNotHomomorphism,
  ActionNotFree,
  NotSymmetric,
  NotOrbitClosed,
  EquatorMismatch,
  NotOrthogonal,
  FixedVertexOffMirror,
  UnrealizableFixedVertex,
  VertexOnMirrorNormal,
  InvalidDocument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symrigid
