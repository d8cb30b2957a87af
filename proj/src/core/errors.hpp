#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apxgrp {

enum class ErrorCode {
  Parse = 1,
  SpecMismatch,
  Domain,
  Threshold,
  Overflow,
  Resource,
  Membership,
  Validation,
  Falsified,
  Io,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Raised when a cover construction is requested below its admissible h;
/// carries the smallest h the construction supports.
class ThresholdError : public Error {
public:
  ThresholdError(int64_t h_min, const std::string& what)
      : Error(ErrorCode::Threshold, what), h_min_(h_min) {}
  int64_t h_min() const noexcept { return h_min_; }

private:
  int64_t h_min_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace apxgrp
