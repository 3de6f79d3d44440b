#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ripsim {

enum class ErrorKind {
  kMalformedStrategy,
  kBudgetExceeded,
  kProtocolViolation,
  kRandomnessCapExceeded,
  kStrategyCapExceeded,
  kInvalidRip,
  kNotNormalized,
  kBaseNotNormalized,
  kNonBinaryPayment,
  kGapViolated,
  kInvalidArgument,
  kConfigInvalid,
};

std::string_view to_string(ErrorKind kind);

class RipError : public std::runtime_error {
 public:
  RipError(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ripsim
