#include "pcp/error.hpp"

namespace pcp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::MissingRelation: return "MissingRelation";
    case ErrorKind::ConflictingOrder: return "ConflictingOrder";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotNilpotentForm: return "NotNilpotentForm";
    case ErrorKind::WeightDivergence: return "WeightDivergence";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::InfiniteOrder: return "InfiniteOrder";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateRelation: return "DuplicateRelation";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
  }
  return "Unknown";
}

}  // namespace pcp
