#pragma once

#include <stdexcept>
#include <string>

namespace synalg {

enum class ErrorKind {
  kShapeMismatch,
  kInvalidShape,
  kNotSymmetric,
  kOffBlock,
  kNotPositive,
  kNotInvertible,
  kNoConvergence,
  kNotProjection,
  kNotSymmetry,
  kNotPartialSymmetry,
  kPrecondition,
  kRankMismatch,
  kParse,
  kIo,
  kCapExceeded,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace synalg
