#pragma once

#include <stdexcept>
#include <string>

namespace tailspace {

enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch = 2,
  domain = 3,
  convergence = 4,
  io = 5,
  parse = 6,
  internal = 7,
};

/// Every failure raised by the core library carries one of the codes above;
/// the C API maps them one-to-one onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace tailspace
