#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace suborb {

enum class ErrorCode {
  // input / precondition errors
  DimensionMismatch,
  NotFiniteWithinBound,
  NonInvertibleGenerator,
  GroupTooLarge,
  NotSubgroup,
  NotNormal,
  NotHomomorphism,
  NotEquivariant,
  NonInvariant,
  CandidateNotSaturated,
  CandidateNotFull,
  PointNotInV,
  GroupNotAbelian,
  ChartMismatch,
  NotTransverse,
  NotTransverseToQ,
  NotInjectiveOnQuotient,
  NotImmersion,
  NotSubmersion,
  CodomainNotManifold,
  RankDeficient,
  NotInImage,
  NonOrthogonalGroup,
  PointsNotInSubspace,
  ParseError,
  UnresolvedName,
  // verdict-level
  CorpusMismatch,
  // a postcondition that the theory guarantees did not hold
  InternalInvariant,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Process exit status associated with an error code (2 input, 1 verdict, 3 internal).
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

/// Postcondition guaranteed by the theory; a failure is a bug, reported with exit status 3.
inline void ensure(bool condition, const std::string& message) {
  if (!condition) fail(ErrorCode::InternalInvariant, message);
}

}  // namespace suborb
