#pragma once

#include <stdexcept>
#include <string>

namespace colorvib {

enum class ErrorCode {
  kDegenerateChromaticity,
  kZeroTristimulus,
  kOutOfGamut,
  kChromaticityOutOfDiagram,
  kCenterOutOfGamut,
  kNotConverged,
  kNoCatchTrials,
  kEmptyStimulusSet,
  kDuplicateResponse,
  kIndexOutOfRange,
  kIncompleteSession,
  kInvalidArgument,
  kFormat,
  kIo,
};

const char* error_name(ErrorCode code) noexcept;

// Base exception for everything the library throws on a contract violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace colorvib
