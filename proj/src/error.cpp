#include "rellich/error.hpp"

namespace rellich {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::CorpusOutsideSubspace: return "CorpusOutsideSubspace";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::DiscriminantZero: return "DiscriminantZero";
    case ErrorCode::DiscriminantNonzero: return "DiscriminantNonzero";
    case ErrorCode::VariantMismatch: return "VariantMismatch";
  }
  return "Unknown";
}

}  // namespace rellich
