#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace holomotion {

enum class ErrorCode {
  InvalidArgument,
  OutOfDomain,
  Overflow,
  PreCritical,
  NonConvergence,
  NonReal,
  Singular,
  OrbitHitsBoundary,
  CriticalNotInJulia,
  HitsCritical,
  PeriodicKneading,
  EmptyCloud,
  BudgetExceeded,
  Io,
};

const char* to_string(ErrorCode code);

// Every failure in the library surfaces as this exception. `index()` carries
// the orbit step or symbol position when the failure is tied to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace holomotion
