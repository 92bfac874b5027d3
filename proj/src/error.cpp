#include "graphesa/error.hpp"

namespace graphesa {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorKind::NotSphericallyHomogeneous: return "NotSphericallyHomogeneous";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::EndIsComplete: return "EndIsComplete";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NotAKernelElement: return "NotAKernelElement";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::PreconditionsNotMet: return "PreconditionsNotMet";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DecayNotCertified: return "DecayNotCertified";
    case ErrorKind::DegenerateWronskian: return "DegenerateWronskian";
    case ErrorKind::BorderlineEnd: return "BorderlineEnd";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NoKernelCandidate: return "NoKernelCandidate";
    case ErrorKind::InvalidFamily: return "InvalidFamily";
  }
  return "Unknown";
}

}  // namespace graphesa
