#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skewcp {

enum class ErrorCode {
  // groups
  NotLatinSquare,
  NoIdentity,
  NoInverse,
  NotAssociative,
  GroupTooLarge,
  MissingEdge,
  UnknownElement,
  // graphs
  InvalidGraph,
  NotSkewProduct,
  ActionNotFree,
  ActionInvalid,
  GraphHasCycle,
  EmptyGraph,
  // matalg
  DimensionMismatch,
  ClosureDiverged,
  NotWellDefined,
  NotSemisimple,
  // crossed
  NotInSpan,
  // duality / groupoids
  CertificationFailed,
  DiagramMismatch,
  BadUnits,
  BadInverse,
  NotAutomorphism,
  IdentityViolated,
  AxiomFailed,
  FormulaMismatch,
  PositivityFailed,
  // io
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library carries a code plus a message naming the
/// witnessing cells, indices or relation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace skewcp
