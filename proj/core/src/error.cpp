#include "qfp/error.hpp"

namespace qfp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::NoOffDiagonalSubmatrix: return "NoOffDiagonalSubmatrix";
    case ErrorCode::NotOffDiagRank1: return "NotOffDiagRank1";
    case ErrorCode::NotOffDiagRank2: return "NotOffDiagRank2";
    case ErrorCode::UnsupportedOffDiagRank: return "UnsupportedOffDiagRank";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NoQuintuple: return "NoQuintuple";
    case ErrorCode::NonIntegralAssembly: return "NonIntegralAssembly";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SplitUnavailable: return "SplitUnavailable";
    case ErrorCode::PTooLarge: return "PTooLarge";
    case ErrorCode::DegenerateSamples: return "DegenerateSamples";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace qfp
