#include "spheroconal/error.hpp"

namespace spheroconal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SphericalTop: return "SphericalTop";
    case ErrorCode::SymmetricTop: return "SymmetricTop";
    case ErrorCode::InvalidOrdering: return "InvalidOrdering";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::Divergent: return "Divergent";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::DegenerateEigenvalues: return "DegenerateEigenvalues";
    case ErrorCode::MatchFailure: return "MatchFailure";
    case ErrorCode::MissingScale: return "MissingScale";
    case ErrorCode::InversionFailure: return "InversionFailure";
    case ErrorCode::LadderEnd: return "LadderEnd";
    case ErrorCode::ProjectionResidual: return "ProjectionResidual";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::RankDeficient: return "RankDeficient";
  }
  return "Unknown";
}

}  // namespace spheroconal
