#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expconvex {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NonFinite,
  NotUnitary,
  ConvergenceFailure,
  Overflow,
  DimensionMismatch,
  HypothesisViolated,
  RankNotOne,
  EvaluationFailure,
  DichotomyViolated,
  NegativeScale,
  NotCommuting,
  IllConditioned,
  InvalidArgument,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace expconvex
