#include "jtree/error.hpp"

namespace jtree {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::CoefficientIndex: return "CoefficientIndex";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DivergedSeries: return "DivergedSeries";
    case ErrorCode::InconclusiveSeries: return "InconclusiveSeries";
    case ErrorCode::RealSpectralParameter: return "RealSpectralParameter";
    case ErrorCode::PatchTooLarge: return "PatchTooLarge";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NotInSubtree: return "NotInSubtree";
    case ErrorCode::AmbiguousPrefix: return "AmbiguousPrefix";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Overflow:
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::DivergedSeries:
    case ErrorCode::InconclusiveSeries:
      return false;
    default:
      return true;
  }
}

}  // namespace jtree
