#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frozenstar {

// Every failure the library can raise. The numeric value doubles as the CLI
// exit code, so entries must stay distinct and must not be reordered.
enum class ErrorCode : int {
  InvalidGeometry = 10,
  TriangleViolation = 11,
  ClosureViolation = 12,
  OutOfDomain = 20,
  GridTooCoarse = 21,
  ModeRequired = 22,
  InvalidModel = 23,
  PoleWindow = 24,
  GridMismatch = 30,
  ConfigMismatch = 31,
  RankDeficient = 40,
  NonPositiveReciprocal = 41,
  MaxItersExceeded = 42,
  AmbiguousSolution = 43,
  MeshTooCoarse = 50,
  EigensolverFailure = 51,
  ConfigParse = 60,
  IO = 61,
  FingerprintMismatch = 62,
  Usage = 63,
  VerificationFailed = 70,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace frozenstar
