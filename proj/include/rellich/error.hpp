#pragma once

#include <stdexcept>
#include <string>

namespace rellich {

enum class ErrorCode {
  InvalidArgument,
  PreconditionViolated,
  OutOfRange,
  UnsupportedRegime,
  NonFiniteIntegrand,
  CorpusOutsideSubspace,
  DegenerateWeight,
  BetaZero,
  NotCritical,
  DiscriminantZero,
  DiscriminantNonzero,
  VariantMismatch,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` lets callers (the CLI in
/// particular) map failures onto exit statuses without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rellich
