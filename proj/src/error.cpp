#include "vproblog/error.hpp"

namespace vpl {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::NonGroundFact: return "non-ground-fact";
    case ErrorCode::ProbabilityRange: return "probability-range";
    case ErrorCode::RangeRestriction: return "range-restriction";
    case ErrorCode::PredicateOverlap: return "predicate-overlap";
    case ErrorCode::ArityConflict: return "arity-conflict";
    case ErrorCode::UnknownPredicate: return "unknown-predicate";
    case ErrorCode::UnregisteredVariable: return "unregistered-variable";
    case ErrorCode::CrossManager: return "cross-manager";
    case ErrorCode::MissingWeight: return "missing-weight";
    case ErrorCode::WeightSum: return "weight-sum";
    case ErrorCode::NodeLimit: return "node-limit";
    case ErrorCode::CapExceeded: return "cap-exceeded";
    case ErrorCode::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace vpl
