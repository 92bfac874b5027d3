#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphesa {

enum class ErrorKind {
  NonPositiveWeight,
  HorizonTooSmall,
  NotSphericallyHomogeneous,
  InvalidGraph,
  UnknownVertex,
  EndIsComplete,
  ZeroForm,
  DomainMismatch,
  NotAKernelElement,
  SolveFailure,
  PreconditionsNotMet,
  IndexOutOfRange,
  DecayNotCertified,
  DegenerateWronskian,
  BorderlineEnd,
  BadParams,
  NoKernelCandidate,
  InvalidFamily,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (CLI, bindings) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace graphesa
