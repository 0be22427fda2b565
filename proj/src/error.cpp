#include "posreal/error.hpp"

namespace posreal {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NotStrictlyProper: return "NotStrictlyProper";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NonpositiveDominantResidue: return "NonpositiveDominantResidue";
    case ErrorCode::NoPolygonIndex: return "NoPolygonIndex";
    case ErrorCode::MultiplePoleUnsupported: return "MultiplePoleUnsupported";
    case ErrorCode::BadPoleBlock: return "BadPoleBlock";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::NotInPolygon: return "NotInPolygon";
    case ErrorCode::DegenerateBarycentric: return "DegenerateBarycentric";
    case ErrorCode::LeftoverNegative: return "LeftoverNegative";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NegativePrefix: return "NegativePrefix";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::NegativeImpulse: return "NegativeImpulse";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace posreal
