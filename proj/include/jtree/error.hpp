#pragma once

#include <stdexcept>
#include <string>

namespace jtree {

enum class ErrorCode {
  InvalidArgument,
  NonPositiveLambda,
  CoefficientIndex,
  NotExact,
  Overflow,
  ConvergenceFailure,
  DivergedSeries,
  InconclusiveSeries,
  RealSpectralParameter,
  PatchTooLarge,
  KindMismatch,
  NotInSubtree,
  AmbiguousPrefix,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

/// True for errors caused by bad input rather than by the numerics.
[[nodiscard]] bool is_validation_error(ErrorCode code) noexcept;

}  // namespace jtree
