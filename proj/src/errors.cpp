#include "errors.hpp"

namespace hypershift {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PrecisionUndecidable: return "PrecisionUndecidable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OutOfReach: return "OutOfReach";
    case ErrorCode::NoWitnessInBudget: return "NoWitnessInBudget";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::FloatRangeExceeded: return "FloatRangeExceeded";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::PhaseUncertain: return "PhaseUncertain";
    case ErrorCode::DivergenceViolated: return "DivergenceViolated";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace hypershift
