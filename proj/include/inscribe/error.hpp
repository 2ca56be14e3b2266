#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inscribe {

/// Default tolerance for parallelism, degeneracy and image tests.
inline constexpr double kDefaultTol = 1e-9;

enum class ErrorCode {
  InvalidLine,
  AllConcurrent,
  AllParallel,
  InvalidConfig,
  MalformedInput,
  NotInImage,
  ParallelPair,
  RankError,
  ZeroVector,
  EmptyInput,
  EmptyScene,
  NotApplicable,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidLine: return "InvalidLine";
    case ErrorCode::AllConcurrent: return "AllConcurrent";
    case ErrorCode::AllParallel: return "AllParallel";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::ParallelPair: return "ParallelPair";
    case ErrorCode::RankError: return "RankError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyScene: return "EmptyScene";
    case ErrorCode::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inscribe
