#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unitarize {

enum class ErrorKind {
  kInvalidInput,
  kNumericalFailure,
  kNotPositiveDefinite,
  kNotAutomorphism,
  kNotUniformlyBounded,
  kDivergenceDetected,
  kSingularShift,
  kNotBoundedFlow,
  kMissingClusterWeight,
  kNonPositiveWeight,
  kNonPositivePhi,
  kCesaroDivergence,
  kNotCommuting,
  kRelationViolated,
  kWeightOnUnmatchedPair,
  kFormMismatch,
  kNotSelfAdjoint,
  kShapeMismatch,
  kSpecInvariantViolated,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `which()` names the offending
/// operand when an operation takes several (e.g. "T2" for a pair).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string which = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        which_(std::move(which)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& which() const noexcept { return which_; }

 private:
  ErrorKind kind_;
  std::string which_;
};

}  // namespace unitarize
