#include "ripsim/core/error.hpp"

namespace ripsim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedStrategy: return "MalformedStrategy";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kProtocolViolation: return "ProtocolViolation";
    case ErrorKind::kRandomnessCapExceeded: return "RandomnessCapExceeded";
    case ErrorKind::kStrategyCapExceeded: return "StrategyCapExceeded";
    case ErrorKind::kInvalidRip: return "InvalidRIP";
    case ErrorKind::kNotNormalized: return "NotNormalized";
    case ErrorKind::kBaseNotNormalized: return "BaseNotNormalized";
    case ErrorKind::kNonBinaryPayment: return "NonBinaryPayment";
    case ErrorKind::kGapViolated: return "GapViolated";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

RipError::RipError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace ripsim
