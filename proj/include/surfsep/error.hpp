#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace surfsep {

enum class ErrorKind {
  InvalidSurface,
  ParseError,
  NotASubgraph,
  MismatchedTower,
  DoesNotLift,
  NoMarkedSubgraph,
  ZeroQuotient,
  Inconsistent,
  NoCorridor,
  SubdivisionMismatch,
  LiftsNotDisjoint,
  MarkedViolation,
  BInH,
  PeripheralH,
  DegenerateSurface,
  HypothesisViolated,
  SelectionFailed,
  VerificationFailed,
  CapExceeded,
  Internal,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidSurface: return "invalid_surface";
    case ErrorKind::ParseError: return "parse_error";
    case ErrorKind::NotASubgraph: return "not_a_subgraph";
    case ErrorKind::MismatchedTower: return "mismatched_tower";
    case ErrorKind::DoesNotLift: return "does_not_lift";
    case ErrorKind::NoMarkedSubgraph: return "no_marked_subgraph";
    case ErrorKind::ZeroQuotient: return "zero_quotient";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::NoCorridor: return "no_corridor";
    case ErrorKind::SubdivisionMismatch: return "subdivision_mismatch";
    case ErrorKind::LiftsNotDisjoint: return "lifts_not_disjoint";
    case ErrorKind::MarkedViolation: return "marked_violation";
    case ErrorKind::BInH: return "b_in_h";
    case ErrorKind::PeripheralH: return "peripheral";
    case ErrorKind::DegenerateSurface: return "degenerate_surface";
    case ErrorKind::HypothesisViolated: return "hypothesis_violated";
    case ErrorKind::SelectionFailed: return "selection_failed";
    case ErrorKind::VerificationFailed: return "verification_failed";
    case ErrorKind::CapExceeded: return "cap_exceeded";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

/// Every failure raised by the library. `kind()` is stable and machine
/// readable; `detail()` carries an optional payload such as a witness word.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string detail = {})
      : std::runtime_error(what), kind_(kind), detail_(std::move(detail)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

#define SURFSEP_ASSERT(cond, msg)                                          \
  do {                                                                     \
    if (!(cond))                                                           \
      throw ::surfsep::Error(::surfsep::ErrorKind::Internal,               \
                             std::string("internal check failed: ") + msg); \
  } while (0)

}  // namespace surfsep
