#include "skewcp/errors.hpp"

namespace skewcp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::NotSkewProduct: return "NotSkewProduct";
    case ErrorCode::ActionNotFree: return "ActionNotFree";
    case ErrorCode::ActionInvalid: return "ActionInvalid";
    case ErrorCode::GraphHasCycle: return "GraphHasCycle";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ClosureDiverged: return "ClosureDiverged";
    case ErrorCode::NotWellDefined: return "NotWellDefined";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::DiagramMismatch: return "DiagramMismatch";
    case ErrorCode::BadUnits: return "BadUnits";
    case ErrorCode::BadInverse: return "BadInverse";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::IdentityViolated: return "IdentityViolated";
    case ErrorCode::AxiomFailed: return "AxiomFailed";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
    case ErrorCode::PositivityFailed: return "PositivityFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace skewcp
