#include "suborb/error.hpp"

namespace suborb {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotFiniteWithinBound: return "NotFiniteWithinBound";
    case ErrorCode::NonInvertibleGenerator: return "NonInvertibleGenerator";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NonInvariant: return "NonInvariant";
    case ErrorCode::CandidateNotSaturated: return "CandidateNotSaturated";
    case ErrorCode::CandidateNotFull: return "CandidateNotFull";
    case ErrorCode::PointNotInV: return "PointNotInV";
    case ErrorCode::GroupNotAbelian: return "GroupNotAbelian";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::NotTransverseToQ: return "NotTransverseToQ";
    case ErrorCode::NotInjectiveOnQuotient: return "NotInjectiveOnQuotient";
    case ErrorCode::NotImmersion: return "NotImmersion";
    case ErrorCode::NotSubmersion: return "NotSubmersion";
    case ErrorCode::CodomainNotManifold: return "CodomainNotManifold";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::NonOrthogonalGroup: return "NonOrthogonalGroup";
    case ErrorCode::PointsNotInSubspace: return "PointsNotInSubspace";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedName: return "UnresolvedName";
    case ErrorCode::CorpusMismatch: return "CorpusMismatch";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "UnknownError";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CorpusMismatch: return 1;
    case ErrorCode::InternalInvariant: return 3;
    default: return 2;
  }
}

}  // namespace suborb
