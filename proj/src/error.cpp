#include "holomotion/error.hpp"

namespace holomotion {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::PreCritical: return "PreCritical";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NonReal: return "NonReal";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::OrbitHitsBoundary: return "OrbitHitsBoundary";
    case ErrorCode::CriticalNotInJulia: return "CriticalNotInJulia";
    case ErrorCode::HitsCritical: return "HitsCritical";
    case ErrorCode::PeriodicKneading: return "PeriodicKneading";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what,
             std::optional<std::size_t> index)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      index_(index) {}

}  // namespace holomotion
