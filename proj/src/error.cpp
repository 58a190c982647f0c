#include "expconvex/error.hpp"

namespace expconvex {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::RankNotOne: return "RankNotOne";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::DichotomyViolated: return "DichotomyViolated";
    case ErrorKind::NegativeScale: return "NegativeScale";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace expconvex
